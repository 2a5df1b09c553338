#include "hawkes/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hawkes {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::invalid_argument("model file: " + where + ": " + what);
}

double num(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) fail(where, std::string("missing field '") + key + "'");
    if (!j[key].is_number()) fail(where, std::string("field '") + key + "' must be a number");
    return j[key].get<double>();
}

std::vector<double> num_array(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        fail(where, std::string("missing array field '") + key + "'");
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number()) fail(where, std::string("'") + key + "' entries must be numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::string tag_of(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        fail(where, "expected an object with a string 'type' tag");
    return j["type"].get<std::string>();
}

BaselineSpec parse_baseline(const json& j, const std::string& where) {
    const std::string tag = tag_of(j, where);
    if (tag == "constant") return ConstantBaseline{num(j, where, "level")};
    if (tag == "sinusoidal")
        return SinusoidalBaseline{num(j, where, "a"), num(j, where, "b"), num(j, where, "c")};
    if (tag == "tabulated")
        return TabulatedBaseline{num(j, where, "t_end"), num_array(j, where, "values")};
    if (tag == "zero") return ZeroBaseline{};
    fail(where, "unknown baseline type '" + tag + "'");
}

KernelSpec parse_kernel(const json& j, const std::string& where) {
    const std::string tag = tag_of(j, where);
    if (tag == "exponential")
        return ExponentialKernel{num(j, where, "alpha"), num(j, where, "beta")};
    if (tag == "gamma")
        return GammaKernel{num(j, where, "w"), num(j, where, "kappa"), num(j, where, "theta")};
    if (tag == "constant_step") return ConstantStepKernel{num(j, where, "w")};
    if (tag == "beta_like")
        return BetaLikeKernel{num(j, where, "alpha"), num(j, where, "beta"),
                              num(j, where, "gamma"), num(j, where, "rho")};
    if (tag == "tabulated")
        return TabulatedKernel{num(j, where, "t_end"), num_array(j, where, "values")};
    if (tag == "zero") return ZeroKernel{};
    fail(where, "unknown kernel type '" + tag + "'");
}

json baseline_json(const BaselineSpec& spec) {
    return std::visit(
        [](const auto& s) -> json {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ConstantBaseline>)
                return {{"type", "constant"}, {"level", s.level}};
            else if constexpr (std::is_same_v<S, SinusoidalBaseline>)
                return {{"type", "sinusoidal"}, {"a", s.a}, {"b", s.b}, {"c", s.c}};
            else if constexpr (std::is_same_v<S, TabulatedBaseline>)
                return {{"type", "tabulated"}, {"t_end", s.t_end}, {"values", s.values}};
            else
                return {{"type", "zero"}};
        },
        spec);
}

json kernel_json(const KernelSpec& spec) {
    return std::visit(
        [](const auto& s) -> json {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ExponentialKernel>)
                return {{"type", "exponential"}, {"alpha", s.alpha}, {"beta", s.beta}};
            else if constexpr (std::is_same_v<S, GammaKernel>)
                return {{"type", "gamma"}, {"w", s.w}, {"kappa", s.kappa}, {"theta", s.theta}};
            else if constexpr (std::is_same_v<S, ConstantStepKernel>)
                return {{"type", "constant_step"}, {"w", s.w}};
            else if constexpr (std::is_same_v<S, BetaLikeKernel>)
                return {{"type", "beta_like"},
                        {"alpha", s.alpha},
                        {"beta", s.beta},
                        {"gamma", s.gamma},
                        {"rho", s.rho}};
            else if constexpr (std::is_same_v<S, TabulatedKernel>)
                return {{"type", "tabulated"}, {"t_end", s.t_end}, {"values", s.values}};
            else
                return {{"type", "zero"}};
        },
        spec);
}

} // namespace

ModelSpec parse_model(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("model file: ") + e.what());
    }
    if (!j.is_object()) fail("/", "top level must be an object");
    if (!j.contains("d") || !j["d"].is_number_integer()) fail("/d", "missing integer dimension");
    ModelSpec model;
    model.d = j["d"].get<int>();
    if (model.d < 1) fail("/d", "dimension must be >= 1");

    if (!j.contains("baseline") || !j["baseline"].is_array() ||
        static_cast<int>(j["baseline"].size()) != model.d)
        fail("/baseline", "expected an array of d baseline objects");
    for (int i = 0; i < model.d; ++i)
        model.baseline.push_back(
            parse_baseline(j["baseline"][i], "/baseline/" + std::to_string(i)));

    if (!j.contains("excitation") || !j["excitation"].is_array() ||
        static_cast<int>(j["excitation"].size()) != model.d)
        fail("/excitation", "expected a d x d array of kernel objects");
    for (int i = 0; i < model.d; ++i) {
        const auto& row = j["excitation"][i];
        if (!row.is_array() || static_cast<int>(row.size()) != model.d)
            fail("/excitation/" + std::to_string(i), "expected a row of d kernel objects");
        for (int c = 0; c < model.d; ++c)
            model.excitation.push_back(parse_kernel(
                row[c], "/excitation/" + std::to_string(i) + "/" + std::to_string(c)));
    }
    validate(model);
    return model;
}

ModelSpec load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string model_to_json(const ModelSpec& model) {
    json j;
    j["d"] = model.d;
    j["baseline"] = json::array();
    for (const auto& b : model.baseline) j["baseline"].push_back(baseline_json(b));
    j["excitation"] = json::array();
    for (int i = 0; i < model.d; ++i) {
        json row = json::array();
        for (int c = 0; c < model.d; ++c) row.push_back(kernel_json(model.kernel(i, c)));
        j["excitation"].push_back(row);
    }
    return j.dump(2);
}

void save_model(const ModelSpec& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write model file: " + path);
    out << model_to_json(model) << "\n";
}

} // namespace hawkes
