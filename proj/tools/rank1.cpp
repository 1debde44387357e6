// Command-line front end: exact constants and their audit, Monte-Carlo
// energies, theorem lower bounds, and the verification suites.
//
// Exit codes: 0 success (discrepancies are informational), 1 suite check
// failure, 2 usage error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "rank1/rank1.hpp"
#include "rank1/serialize.hpp"

namespace {

using namespace rank1;

struct CliConfig {
    std::uint64_t seed = 42;
    std::size_t samples = 100000;
    std::size_t chunk = 4096;
    int workers = 1;
    std::string mode = "derived";
    std::string format = "text";
    std::string out;
    bool deterministic = false;

    SamplerSpec sampler() const {
        return SamplerSpec{seed, samples, chunk, workers};
    }
    Mode constant_mode() const {
        if (mode == "printed") return Mode::Printed;
        if (mode == "derived") return Mode::Derived;
        throw CLI::ValidationError("--mode must be printed or derived");
    }
};

void add_common(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "RNG seed (RANK1_SEED overrides the default)");
    cmd->add_option("--samples", cfg.samples, "Monte-Carlo sample budget")->check(CLI::PositiveNumber);
    cmd->add_option("--chunk", cfg.chunk, "samples per RNG chunk")->check(CLI::PositiveNumber);
    cmd->add_option("--workers", cfg.workers, "worker threads (never changes results)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--mode", cfg.mode, "constant mode: printed | derived")
        ->check(CLI::IsMember({"printed", "derived"}));
    cmd->add_option("--format", cfg.format, "output format: text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", cfg.out, "write output to this path instead of stdout");
    cmd->add_flag("--deterministic", cfg.deterministic, "suppress the timestamp field");
}

void emit(const CliConfig& cfg, const std::string& payload) {
    if (cfg.out.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file " + cfg.out);
        file << payload;
    }
}

std::string float17(double v) { return format_double(v); }

ExactConstant parse_constant_flag(const std::string& text, const std::string& flag) {
    auto c = ExactConstant::parse(text);
    if (!c) {
        try {
            return ExactConstant(BigRat(std::stod(text)));
        } catch (...) {
        }
        throw CLI::ValidationError(flag + ": cannot parse '" + text + "' as an exact constant");
    }
    return *c;
}

// ---------------------------------------------------------------------------
// constants
// ---------------------------------------------------------------------------

int cmd_constants(const CliConfig& cfg, int sigma_m, int frame_n, int k_n, int audit_n,
                  const std::string& measure_id, const std::string& space_token_arg,
                  int space_dim) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    auto add_row = [&](const std::string& quantity, const ExactConstant& value) {
        rows.push_back({{"quantity", quantity},
                        {"exact", value.str()},
                        {"float", value.to_double()}});
    };

    if (sigma_m >= 0) add_row("sigma(" + std::to_string(sigma_m) + ")", sphere_volume(sigma_m));
    if (frame_n >= 0)
        add_row("frame_volume(" + std::to_string(frame_n) + ")", frame_space_volume(frame_n));
    if (k_n >= 0)
        add_row("K(" + std::to_string(k_n) + "," + cfg.mode + ")",
                k_constant(k_n, cfg.constant_mode()));
    if (!space_token_arg.empty()) {
        SpaceId s = parse_space(space_token_arg, space_dim);
        add_row("vol(" + s.str() + ")", space_volume(s));
    }
    if (!measure_id.empty()) {
        auto open = measure_id.find('(');
        auto close = measure_id.find(')');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw CLI::ValidationError("--measure expects name(N), e.g. c2(2)");
        std::string name = measure_id.substr(0, open);
        int dim = std::stoi(measure_id.substr(open + 1, close - open - 1));
        MeasureSpace ms = name == "geodesics_rpn" ? MeasureSpace::geodesics_rpn(dim)
                          : name == "lines_cpn"   ? MeasureSpace::lines_cpn(dim)
                          : name == "hlines_hpn"  ? MeasureSpace::hlines_hpn(dim)
                          : name == "c2"          ? MeasureSpace::c2(dim)
                          : name == "cplanes_hpn" ? MeasureSpace::cplanes_hpn(dim)
                                                  : throw CLI::ValidationError(
                                                        "unknown measure space " + name);
        add_row("vol(" + ms.str() + "," + cfg.mode + ")",
                measure_space_volume(ms, cfg.constant_mode()));
    }

    nlohmann::ordered_json audits = nlohmann::ordered_json::array();
    if (audit_n >= 2) {
        for (const auto& a : audit_constants(audit_n)) {
            nlohmann::ordered_json j;
            j["id"] = a.id;
            j["printed"] = a.printed.str();
            j["derived"] = a.derived.str();
            j["verdict"] = a.consistent ? "consistent" : "discrepant";
            if (a.ratio) j["ratio"] = a.ratio->str();
            j["ratio_float"] = a.ratio_float;
            audits.push_back(j);
        }
    }

    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        if (!cfg.deterministic)
            j["timestamp"] = static_cast<long long>(
                std::chrono::duration_cast<std::chrono::seconds>(
                    std::chrono::system_clock::now().time_since_epoch())
                    .count());
        j["constants"] = rows;
        if (!audits.empty()) j["audit"] = audits;
        emit(cfg, j.dump(2));
        return 0;
    }
    if (cfg.format == "csv") {
        std::ostringstream out;
        out << "quantity,exact,float,estimate,std_error,samples,seed,status\n";
        for (const auto& r : rows)
            out << csv_escape(r["quantity"].get<std::string>()) << ','
                << csv_escape(r["exact"].get<std::string>()) << ','
                << float17(r["float"].get<double>()) << ",,," << cfg.samples << ',' << cfg.seed
                << ",\n";
        for (const auto& a : audits)
            out << csv_escape("audit:" + a["id"].get<std::string>()) << ','
                << csv_escape(a["printed"].get<std::string>()) << ",,"
                << csv_escape(a["derived"].get<std::string>()) << ",," << cfg.samples << ','
                << cfg.seed << ',' << a["verdict"].get<std::string>() << '\n';
        emit(cfg, out.str());
        return 0;
    }
    std::ostringstream out;
    for (const auto& r : rows)
        out << r["quantity"].get<std::string>() << " = " << r["exact"].get<std::string>()
            << "  (" << float17(r["float"].get<double>()) << ")\n";
    for (const auto& a : audits) {
        out << a["id"].get<std::string>() << ": " << a["verdict"].get<std::string>()
            << "  printed = " << a["printed"].get<std::string>()
            << "  derived = " << a["derived"].get<std::string>();
        if (a.contains("ratio")) out << "  ratio = " << a["ratio"].get<std::string>();
        out << '\n';
    }
    emit(cfg, out.str());
    return 0;
}

// ---------------------------------------------------------------------------
// energy / bound
// ---------------------------------------------------------------------------

int cmd_energy(const CliConfig& cfg, const std::string& space_token_arg, int dim,
               const std::string& map_text, double p) {
    SpaceId domain = parse_space(space_token_arg, dim);
    MapDescriptor f = parse_map(map_text, domain);
    Estimate e = p_energy(EnergyQuery(f, p, cfg.sampler()));

    nlohmann::ordered_json j;
    if (!cfg.deterministic)
        j["timestamp"] = static_cast<long long>(
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count());
    j["map"] = map_to_json(f);
    j["p"] = p;
    j["estimate"] = e.mean;
    j["std_error"] = e.std_error;
    j["samples"] = e.samples;
    if (e.exact) {
        j["exact"] = e.exact->str();
        j["exact_float"] = e.exact->to_double();
    }
    if (cfg.format == "json") {
        emit(cfg, j.dump(2));
    } else if (cfg.format == "csv") {
        std::ostringstream out;
        out << "quantity,exact,float,estimate,std_error,samples,seed,status\n";
        out << csv_escape("E_" + float17(p) + "(" + map_text + "," + domain.str() + ")") << ','
            << (e.exact ? csv_escape(e.exact->str()) : "") << ','
            << (e.exact ? float17(e.exact->to_double()) : "") << ',' << float17(e.mean) << ','
            << float17(e.std_error) << ',' << e.samples << ',' << cfg.seed << ",\n";
        emit(cfg, out.str());
    } else {
        std::ostringstream out;
        out << "E_" << p << "(" << map_text << ", " << domain.str() << ") = " << float17(e.mean)
            << " +/- " << float17(e.std_error);
        if (e.exact) out << "   exact: " << e.exact->str() << " = " << float17(e.exact->to_double());
        out << '\n';
        emit(cfg, out.str());
    }
    return 0;
}

int cmd_bound(const CliConfig& cfg, const std::string& thm, int dim, double p,
              const std::string& invariant_text) {
    TheoremId theorem = thm == "rpn"   ? TheoremId::Rpn
                        : thm == "cpn" ? TheoremId::Cpn
                        : thm == "hpn" ? TheoremId::Hpn
                                       : throw CLI::ValidationError("--thm must be rpn|cpn|hpn");
    ExactConstant invariant = invariant_text.empty()
                                  ? catalog_class_invariant(theorem)
                                  : parse_constant_flag(invariant_text, "--Lstar/--Astar/--Bstar");
    BoundQuery q{theorem, dim, p, invariant.to_double(), invariant, cfg.constant_mode()};
    BoundResult r = evaluate_bound(q);

    nlohmann::ordered_json j;
    if (!cfg.deterministic)
        j["timestamp"] = static_cast<long long>(
            std::chrono::duration_cast<std::chrono::seconds>(
                std::chrono::system_clock::now().time_since_epoch())
                .count());
    j["theorem"] = thm;
    j["dimension"] = dim;
    j["p"] = p;
    j["class_invariant"] = invariant.str();
    j["mode"] = cfg.mode;
    j["value"] = r.value;
    j["strict"] = r.strict;
    if (r.exact) j["exact"] = r.exact->str();
    if (!r.equality_witnesses.empty()) j["equality_witnesses"] = r.equality_witnesses;

    if (cfg.format == "json") {
        emit(cfg, j.dump(2));
    } else if (cfg.format == "csv") {
        std::ostringstream out;
        out << "quantity,exact,float,estimate,std_error,samples,seed,status\n";
        out << csv_escape("bound_" + thm + "(dim=" + std::to_string(dim) + ",p=" + float17(p) +
                          "," + cfg.mode + ")")
            << ',' << (r.exact ? csv_escape(r.exact->str()) : "") << ',' << float17(r.value)
            << ",,," << cfg.samples << ',' << cfg.seed << ",\n";
        emit(cfg, out.str());
    } else {
        std::ostringstream out;
        out << "E_p(F) " << (r.strict ? "> " : ">= ") << float17(r.value);
        if (r.exact) out << "   exact: " << r.exact->str();
        out << "   [" << cfg.mode << " mode";
        if (!r.equality_witnesses.empty()) {
            out << "; equality: ";
            for (std::size_t i = 0; i < r.equality_witnesses.size(); ++i)
                out << (i ? ", " : "") << r.equality_witnesses[i];
        }
        out << "]\n";
        emit(cfg, out.str());
    }
    return 0;
}

// ---------------------------------------------------------------------------
// suite
// ---------------------------------------------------------------------------

int cmd_suite(const CliConfig& cfg, const std::string& name) {
    VerificationReport report;
    try {
        report = run_suite(name, cfg.sampler());
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::string payload;
    if (cfg.format == "csv") {
        payload = to_csv(report);
    } else if (cfg.format == "json" || !cfg.out.empty()) {
        auto j = to_json(report);
        if (!cfg.deterministic) {
            nlohmann::ordered_json stamped;
            stamped["timestamp"] = static_cast<long long>(
                std::chrono::duration_cast<std::chrono::seconds>(
                    std::chrono::system_clock::now().time_since_epoch())
                    .count());
            for (auto& [k, v] : j.items()) stamped[k] = v;
            j = std::move(stamped);
        }
        payload = j.dump(2);
    } else {
        std::ostringstream out;
        out << "suite " << report.suite << " (seed " << report.seed << ", samples "
            << report.samples << ")\n";
        for (const auto& c : report.checks) {
            out << "  [" << status_name(c.status) << "] " << c.id;
            if (c.estimate && c.exact)
                out << "  estimate " << float17(*c.estimate) << " vs " << float17(*c.exact);
            if (c.std_error && *c.std_error > 0.0) out << " +/- " << float17(*c.std_error);
            if (!c.notes.empty()) out << "  -- " << c.notes;
            out << '\n';
        }
        out << (report.failed() ? "FAILED" : "OK") << ", " << report.checks.size() << " checks, "
            << report.discrepancies() << " discrepancies\n";
        payload = out.str();
    }
    emit(cfg, payload);
    if (!cfg.out.empty() && cfg.format == "text")
        std::cout << (report.failed() ? "FAILED" : "OK") << ", report written to " << cfg.out
                  << "\n";
    return report.failed() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification toolkit for energy functionals of maps between "
                 "rank-1 symmetric spaces"};
    app.require_subcommand(1);

    CliConfig cfg;
    if (const char* env_seed = std::getenv("RANK1_SEED")) {
        try {
            cfg.seed = std::stoull(env_seed);
        } catch (...) {
        }
    }

    // constants
    auto* constants = app.add_subcommand("constants", "exact constants and the printed/derived audit");
    int sigma_m = -1, frame_n = -1, k_n = -1, audit_n = -1, space_dim = 1;
    std::string measure_id, const_space;
    bool audit_flag = false;
    constants->add_option("--sigma", sigma_m, "sphere volume sigma(m)");
    constants->add_option("--frame-vol", frame_n, "frame space volume F(N)");
    constants->add_option("--K", k_n, "theorem constant K_N");
    constants->add_option("--measure", measure_id, "measure-space volume, e.g. c2(2)");
    constants->add_option("--space", const_space, "model space volume: s | rp | cp | hp");
    constants->add_flag("--audit", audit_flag, "run the printed-vs-derived audit");
    add_common(constants, cfg);
    auto* const_n = constants->add_option("--n,--N", space_dim, "dimension parameter");

    // energy
    auto* energy = app.add_subcommand("energy", "Monte-Carlo p-energy of a catalog map");
    std::string energy_space, energy_map = "identity";
    int energy_dim = 2;
    double energy_p = 2.0;
    energy->add_option("--space", energy_space, "domain: s | rp | cp | hp")->required();
    energy->add_option("--n,--N", energy_dim, "dimension parameter")->required();
    energy->add_option("--map", energy_map, "identity | dilation:l | power:d | projlin:<json> | isometry:<seed> | hopf | twistor");
    energy->add_option("--p", energy_p, "energy exponent p >= 1");
    add_common(energy, cfg);

    // bound
    auto* bound = app.add_subcommand("bound", "theorem lower bound");
    std::string bound_thm, invariant_text;
    int bound_dim = 2;
    double bound_p = 2.0;
    bound->add_option("--thm", bound_thm, "rpn | cpn | hpn")->required();
    bound->add_option("--n,--N", bound_dim, "dimension parameter")->required();
    bound->add_option("--p", bound_p, "energy exponent");
    bound->add_option("--Lstar,--Astar,--Bstar", invariant_text,
                      "class invariant as an exact constant, e.g. pi^2/6 (default: catalog)");
    add_common(bound, cfg);

    // suite
    auto* suite = app.add_subcommand("suite", "run a named verification suite");
    std::string suite_name;
    suite->add_option("--name", suite_name, "constants-audit | rpn | cpn | hpn | kraines | fubini | dilation | all")
        ->required();
    add_common(suite, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (constants->parsed()) {
            if (audit_flag) {
                audit_n = const_n->count() ? space_dim : 3;
                if (audit_n < 2) throw CLI::ValidationError("--audit needs N >= 2");
            }
            return cmd_constants(cfg, sigma_m, frame_n, k_n, audit_n, measure_id, const_space,
                                 space_dim);
        }
        if (energy->parsed()) return cmd_energy(cfg, energy_space, energy_dim, energy_map, energy_p);
        if (bound->parsed()) return cmd_bound(cfg, bound_thm, bound_dim, bound_p, invariant_text);
        if (suite->parsed()) return cmd_suite(cfg, suite_name);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
