#include "gimvi/serialize.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "gimvi/errors.hpp"

namespace gimvi {

using nlohmann::json;

namespace {

json vec_to_json(const Vec& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Vec vec_from_json(const json& j) {
    Vec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    return v;
}

json mat_to_json(const Mat& m) {
    // row-major flat array
    json arr = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(m(i, j));
    return arr;
}

Mat mat_from_json(const json& j, int dim) {
    if (j.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim))
        throw Error("matrix entry count does not match dim*dim");
    Mat m(dim, dim);
    std::size_t k = 0;
    for (int i = 0; i < dim; ++i)
        for (int c = 0; c < dim; ++c) m(i, c) = j[k++].get<double>();
    return m;
}

} // namespace

json feasible_set_to_json(const FeasibleSet& omega) {
    json j;
    switch (omega.kind) {
        case FeasibleSet::Kind::WholeSpace:
            j["variant"] = "whole-space";
            j["dim"] = omega.dim();
            break;
        case FeasibleSet::Kind::Box:
            j["variant"] = "box";
            j["lo"] = vec_to_json(omega.lo);
            j["hi"] = vec_to_json(omega.hi);
            break;
        case FeasibleSet::Kind::Ball:
            j["variant"] = "ball";
            j["center"] = vec_to_json(omega.center);
            j["radius"] = omega.radius;
            break;
    }
    return j;
}

FeasibleSet feasible_set_from_json(const json& j) {
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "whole-space") return FeasibleSet::whole_space(j.at("dim").get<int>());
    if (variant == "box")
        return FeasibleSet::box(vec_from_json(j.at("lo")), vec_from_json(j.at("hi")));
    if (variant == "ball")
        return FeasibleSet::ball(vec_from_json(j.at("center")), j.at("radius").get<double>());
    throw Error("unknown feasible-set variant: " + variant);
}

json hspec_to_json(const HSpec& h) {
    json j;
    switch (h.kind) {
        case HSpec::Kind::Zero:
            j["variant"] = "zero";
            break;
        case HSpec::Kind::Linear:
            j["variant"] = "linear";
            j["s"] = vec_to_json(h.s);
            break;
        case HSpec::Kind::SeparableQuadratic:
            j["variant"] = "separable-quadratic";
            j["q"] = vec_to_json(h.q);
            break;
        case HSpec::Kind::Custom:
            throw Error("custom h is callback-backed and not serializable");
    }
    return j;
}

HSpec hspec_from_json(const json& j) {
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "zero") return HSpec::zero();
    if (variant == "linear") return HSpec::linear(vec_from_json(j.at("s")));
    if (variant == "separable-quadratic")
        return HSpec::separable_quadratic(vec_from_json(j.at("q")));
    throw Error("unknown h variant: " + variant);
}

json instance_to_json(const ProblemInstance& inst) {
    json j;
    j["dim"] = inst.dim;
    j["M"] = mat_to_json(inst.F.M);
    j["b"] = vec_to_json(inst.F.b);
    j["G"] = mat_to_json(inst.g.M);
    j["d"] = vec_to_json(inst.g.b);
    j["omega"] = feasible_set_to_json(inst.omega);
    j["h"] = hspec_to_json(inst.h);
    j["gamma"] = inst.gamma;
    j["constants"] = {{"eta", inst.constants.eta},
                      {"beta", inst.constants.beta},
                      {"lambda", inst.constants.lambda},
                      {"zeta", inst.constants.zeta}};
    return j;
}

ProblemInstance instance_from_json(const json& j) {
    ProblemInstance inst;
    inst.dim = j.at("dim").get<int>();
    if (inst.dim < 1) throw Error("instance dim must be >= 1");
    inst.F = {mat_from_json(j.at("M"), inst.dim), vec_from_json(j.at("b"))};
    inst.g = {mat_from_json(j.at("G"), inst.dim), vec_from_json(j.at("d"))};
    inst.omega = feasible_set_from_json(j.at("omega"));
    inst.h = hspec_from_json(j.at("h"));
    inst.gamma = j.at("gamma").get<double>();
    const json& k = j.at("constants");
    inst.constants = {k.at("eta").get<double>(), k.at("beta").get<double>(),
                      k.at("lambda").get<double>(), k.at("zeta").get<double>()};

    require_finite(inst.F.M, "M");
    require_finite(inst.F.b, "b");
    require_finite(inst.g.M, "G");
    require_finite(inst.g.b, "d");

    // Loaded constants are trusted as given; the certified flag records
    // whether they coincide with the spectral values.
    const InstanceConstants sp = spectral_constants(inst.F, inst.g);
    const double drift =
        std::max({std::abs(sp.eta - inst.constants.eta), std::abs(sp.beta - inst.constants.beta),
                  std::abs(sp.lambda - inst.constants.lambda),
                  std::abs(sp.zeta - inst.constants.zeta)});
    inst.certified = drift <= 1e-9;
    return inst;
}

void save_instance(const ProblemInstance& inst, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open for writing: " + path);
    os << instance_to_json(inst).dump(2) << '\n';
}

ProblemInstance load_instance(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open for reading: " + path);
    json j;
    is >> j;
    return instance_from_json(j);
}

} // namespace gimvi
