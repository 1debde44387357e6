#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rank1 {

using BigRat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Float50 = boost::multiprecision::cpp_bin_float_50;

inline BigInt factorial(long n) {
    if (n < 0) throw std::invalid_argument("factorial of negative integer");
    BigInt r = 1;
    for (long k = 2; k <= n; ++k) r *= k;
    return r;
}

/// Polynomial in pi with arbitrary-precision rational coefficients and
/// integer (possibly negative) exponents.  Every closed-form constant in
/// this toolkit is of this shape, so comparisons between transcribed and
/// re-derived values can be made exactly instead of in floating point.
class ExactConstant {
  public:
    ExactConstant() = default;
    ExactConstant(long value) { add_term(0, BigRat(value)); }  // NOLINT(google-explicit-constructor)
    ExactConstant(const BigRat& coeff, int pi_pow = 0) { add_term(pi_pow, coeff); }

    static ExactConstant zero() { return {}; }
    static ExactConstant one() { return ExactConstant(1); }
    static ExactConstant pi(int power = 1) { return ExactConstant(BigRat(1), power); }
    static ExactConstant rational(long num, long den, int pi_pow = 0) {
        return ExactConstant(BigRat(num, den), pi_pow);
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_single_term() const { return terms_.size() == 1; }
    const std::map<int, BigRat>& terms() const { return terms_; }

    BigRat coeff(int pi_pow) const {
        auto it = terms_.find(pi_pow);
        return it == terms_.end() ? BigRat(0) : it->second;
    }

    friend ExactConstant operator+(const ExactConstant& a, const ExactConstant& b) {
        ExactConstant r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, c);
        return r;
    }
    friend ExactConstant operator-(const ExactConstant& a, const ExactConstant& b) {
        ExactConstant r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, -c);
        return r;
    }
    friend ExactConstant operator-(const ExactConstant& a) {
        ExactConstant r;
        for (const auto& [k, c] : a.terms_) r.add_term(k, -c);
        return r;
    }
    friend ExactConstant operator*(const ExactConstant& a, const ExactConstant& b) {
        ExactConstant r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
        return r;
    }
    friend ExactConstant operator*(const ExactConstant& a, const BigRat& s) {
        ExactConstant r;
        for (const auto& [k, c] : a.terms_) r.add_term(k, c * s);
        return r;
    }
    friend ExactConstant operator*(const BigRat& s, const ExactConstant& a) { return a * s; }
    friend bool operator==(const ExactConstant& a, const ExactConstant& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const ExactConstant& a, const ExactConstant& b) { return !(a == b); }

    ExactConstant pow(unsigned e) const {
        ExactConstant r = one();
        for (unsigned i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    /// Exact quotient.  Defined whenever the divisor is a single term
    /// c*pi^k (the only case this toolkit needs); empty otherwise.
    std::optional<ExactConstant> try_divide(const ExactConstant& d) const {
        if (d.is_zero()) throw std::invalid_argument("division by zero constant");
        if (!d.is_single_term()) return std::nullopt;
        const auto& [kd, cd] = *d.terms_.begin();
        ExactConstant r;
        for (const auto& [k, c] : terms_) r.add_term(k - kd, c / cd);
        return r;
    }

    double to_double() const {
        return to_float<double>(3.14159265358979323846264338327950288419716939937510582097494);
    }

    Float50 to_float50() const {
        static const Float50 pi50(
            "3.14159265358979323846264338327950288419716939937510582097494459");
        return to_float<Float50>(pi50);
    }

    /// Canonical rendering: terms in ascending pi-power, rationals in
    /// lowest terms, e.g. "8/3*pi^8" or "4/3*pi^-18 + 128*pi^-1".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            BigRat a = c;
            if (!first) {
                out << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool unit_coeff = (a == 1 || a == -1) && k != 0;
            if (a == -1 && k != 0)
                out << "-";
            else if (!unit_coeff)
                out << a;
            if (k != 0) {
                if (!unit_coeff) out << "*";
                out << "pi";
                if (k != 1) out << "^" << k;
            }
        }
        return out.str();
    }

    /// Parses the canonical rendering above (also accepts "pi^2/6" style
    /// single terms with a trailing denominator).
    static std::optional<ExactConstant> parse(const std::string& text);

  private:
    template <typename T>
    T to_float(const T& pi_value) const {
        T acc(0);
        for (const auto& [k, c] : terms_) {
            T num(static_cast<BigInt>(boost::multiprecision::numerator(c)));
            T den(static_cast<BigInt>(boost::multiprecision::denominator(c)));
            T term = num / den;
            if (k > 0)
                for (int i = 0; i < k; ++i) term *= pi_value;
            else
                for (int i = 0; i < -k; ++i) term /= pi_value;
            acc += term;
        }
        return acc;
    }

    void add_term(int k, const BigRat& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<int, BigRat> terms_;
};

namespace detail {

inline bool parse_term(const std::string& t, int& pi_pow, BigRat& coeff) {
    // [coeff*]pi[^k][/den] | coeff | pi^k
    std::string s = t;
    coeff = 1;
    pi_pow = 0;
    auto star = s.find('*');
    if (star != std::string::npos) {
        try {
            coeff = BigRat(s.substr(0, star));
        } catch (...) {
            return false;
        }
        s = s.substr(star + 1);
    }
    auto pi_at = s.find("pi");
    if (pi_at == std::string::npos) {
        if (star != std::string::npos) return false;
        try {
            coeff = BigRat(s);
        } catch (...) {
            return false;
        }
        return true;
    }
    if (pi_at != 0) return false;
    s = s.substr(2);
    pi_pow = 1;
    if (!s.empty() && s[0] == '^') {
        size_t pos = 1;
        while (pos < s.size() && (s[pos] == '-' || std::isdigit(static_cast<unsigned char>(s[pos]))))
            ++pos;
        try {
            pi_pow = std::stoi(s.substr(1, pos - 1));
        } catch (...) {
            return false;
        }
        s = s.substr(pos);
    }
    if (!s.empty() && s[0] == '/') {
        try {
            coeff /= BigRat(s.substr(1));
        } catch (...) {
            return false;
        }
        s.clear();
    }
    return s.empty();
}

}  // namespace detail

inline std::optional<ExactConstant> ExactConstant::parse(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) return std::nullopt;
    ExactConstant acc;
    size_t pos = 0;
    int sign = 1;
    if (s[0] == '-') {
        sign = -1;
        pos = 1;
    } else if (s[0] == '+') {
        pos = 1;
    }
    while (pos <= s.size()) {
        size_t next = pos;
        while (next < s.size() && s[next] != '+' && !(s[next] == '-' && next > pos && s[next - 1] != '^'))
            ++next;
        int k = 0;
        BigRat c;
        if (!detail::parse_term(s.substr(pos, next - pos), k, c)) return std::nullopt;
        acc = acc + ExactConstant(c * sign, k);
        if (next >= s.size()) break;
        sign = (s[next] == '-') ? -1 : 1;
        pos = next + 1;
    }
    return acc;
}

}  // namespace rank1
