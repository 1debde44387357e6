#pragma once

#include <json.hpp>

#include "rank1/sampling.hpp"

namespace rank1 {

inline std::string space_token(const SpaceId& s) {
    switch (s.family) {
        case Family::Sphere: return "s";
        case Family::RealProj: return "rp";
        case Family::ComplexProj: return "cp";
        case Family::QuatProj: return "hp";
    }
    return "?";
}

inline SpaceId parse_space(const std::string& token, int dim) {
    if (token == "s" || token == "sphere") return SpaceId::sphere(dim);
    if (token == "rp" || token == "rpn") return SpaceId::real_proj(dim);
    if (token == "cp" || token == "cpn") return SpaceId::complex_proj(dim);
    if (token == "hp" || token == "hpn") return SpaceId::quat_proj(dim);
    throw std::invalid_argument("unknown space '" + token + "' (use s | rp | cp | hp)");
}

/// Points serialize as flat arrays of real ambient coordinates.
inline nlohmann::ordered_json point_to_json(const PointRep& p) {
    nlohmann::ordered_json j;
    j["space"] = space_token(p.space);
    j["dim"] = p.space.param;
    auto coords = nlohmann::ordered_json::array();
    for (int i = 0; i < p.v.real_dim(); ++i) coords.push_back(p.v.real_coord(i));
    j["v"] = coords;
    return j;
}

inline PointRep point_from_json(const nlohmann::json& j) {
    SpaceId space = parse_space(j.at("space").get<std::string>(), j.at("dim").get<int>());
    AmbientVec v(space.field(), space.ambient_slots());
    const auto& coords = j.at("v");
    if (static_cast<int>(coords.size()) != v.real_dim())
        throw std::invalid_argument("point_from_json: coordinate count mismatch");
    for (int i = 0; i < v.real_dim(); ++i) v.set_real_coord(i, coords[static_cast<std::size_t>(i)].get<double>());
    return PointRep(space, v);
}

namespace detail {

inline Quat entry_from_json(const nlohmann::json& e, Field field) {
    if (e.is_number()) return Quat(e.get<double>());
    if (e.is_array()) {
        if (field == Field::Complex && e.size() == 2)
            return Quat::complex(e[0].get<double>(), e[1].get<double>());
        if (field == Field::Quaternion && e.size() == 4)
            return Quat(e[0].get<double>(), e[1].get<double>(), e[2].get<double>(),
                        e[3].get<double>());
    }
    throw std::invalid_argument("matrix entry must be a number or [re,im] / [w,x,y,z]");
}

inline QMatrix matrix_from_json(const nlohmann::json& rows, Field field) {
    if (!rows.is_array() || rows.empty()) throw std::invalid_argument("matrix must be an array of rows");
    int r = static_cast<int>(rows.size());
    int c = static_cast<int>(rows[0].size());
    QMatrix m(field, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c)
            throw std::invalid_argument("ragged matrix");
        for (int j = 0; j < c; ++j)
            m.at(i, j) = entry_from_json(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], field);
    }
    return m;
}

}  // namespace detail

/// Builds a map from a CLI descriptor "name[:params]" against a domain
/// space.  Supported names: identity, dilation:<lambda>, power:<d>,
/// projlin:<json matrix>, isometry:<seed>, hopf, twistor.
inline MapDescriptor parse_map(const std::string& text, const SpaceId& domain) {
    std::string name = text;
    std::string params;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        name = text.substr(0, colon);
        params = text.substr(colon + 1);
    }
    if (name == "identity") return MapDescriptor::identity(domain);
    if (name == "dilation") {
        if (domain.family != Family::Sphere)
            throw std::invalid_argument("dilation is defined on spheres (--space s)");
        return MapDescriptor::conformal_dilation(domain.param, std::stod(params));
    }
    if (name == "power") {
        if (domain != SpaceId::complex_proj(1))
            throw std::invalid_argument("power maps live on CP^1 (--space cp --N 1)");
        return MapDescriptor::power_map(std::stoi(params));
    }
    if (name == "projlin") {
        QMatrix m = detail::matrix_from_json(nlohmann::json::parse(params), domain.field());
        return MapDescriptor::projective_linear(domain, m);
    }
    if (name == "isometry") {
        Rng rng(params.empty() ? 1u : static_cast<std::uint64_t>(std::stoull(params)));
        return MapDescriptor::ambient_isometry(domain, haar_isometry(domain, rng));
    }
    if (name == "hopf") {
        if (domain.family != Family::Sphere)
            throw std::invalid_argument("hopf projection needs a sphere domain");
        Family target = params == "hp" ? Family::QuatProj : Family::ComplexProj;
        return MapDescriptor::hopf_projection(domain.param, target);
    }
    if (name == "twistor") {
        if (domain.family != Family::ComplexProj || domain.param % 2 != 1)
            throw std::invalid_argument("twistor projection needs CP^{2N+1}");
        return MapDescriptor::twistor_projection((domain.param - 1) / 2);
    }
    throw std::invalid_argument("unknown map '" + name + "'");
}

inline nlohmann::ordered_json map_to_json(const MapDescriptor& f) {
    nlohmann::ordered_json j;
    j["kind"] = f.kind_name();
    j["domain"] = {{"space", space_token(f.domain())}, {"dim", f.domain().param}};
    j["codomain"] = {{"space", space_token(f.codomain())}, {"dim", f.codomain().param}};
    if (f.kind == MapDescriptor::Kind::ConformalDilation) j["lambda"] = f.lambda;
    if (f.kind == MapDescriptor::Kind::PowerMap) j["degree"] = f.degree;
    if (f.kind == MapDescriptor::Kind::ProjectiveLinear) j["condition"] = f.condition_number;
    return j;
}

}  // namespace rank1
