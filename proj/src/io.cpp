#include "tate/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace tate {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

double round15(double x) { return std::strtod(format_double(x).c_str(), nullptr); }

json spectrum_to_json(const std::vector<SpectrumEntry>& spectrum) {
    json out = json::array();
    for (const auto& e : spectrum) {
        json row;
        row["kind"] = to_string(e.kind);
        switch (e.kind) {
            case ModeKind::zero:
                row["lambda"] = "0";
                break;
            case ModeKind::radial:
                row["n"] = e.index;
                row["lambda"] = to_string(*e.eigenvalue.exact);
                break;
            case ModeKind::angular:
                row["l"] = e.index;
                row["lambda"] = round15(e.eigenvalue.value);
                row["lambda_exact"] = e.eigenvalue.exact ? json(to_string(*e.eigenvalue.exact)) : json(nullptr);
                break;
        }
        row["mult"] = e.multiplicity;
        out.push_back(std::move(row));
    }
    return out;
}

json step_function_to_json(const StepFunction& f) {
    json out;
    out["p"] = f.ctx().p();
    out["m"] = f.ctx().m();
    json balls = json::array();
    for (std::size_t i = 0; i < f.partition().size(); ++i) {
        const Ball& b = f.partition().balls()[i];
        balls.push_back({{"v", b.v()}, {"k", b.k()}, {"center", b.center().get_str()}, {"value", to_string(f.values()[i])}});
    }
    out["balls"] = std::move(balls);
    return out;
}

namespace {

Rational rational_field(const json& j, const char* key) {
    const json& v = j.at(key);
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw std::invalid_argument(std::string("field '") + key + "' must be an integer or a rational string");
}

}  // namespace

StepFunction step_function_from_json(const json& j) {
    try {
        const PrimeParams ctx(j.at("p").get<std::int64_t>(), j.at("m").get<int>());
        std::vector<Ball> balls;
        std::vector<Rational> values;
        for (const auto& b : j.at("balls")) {
            balls.emplace_back(ctx, b.at("v").get<long>(), b.at("k").get<int>(), rational_field(b, "center"));
            values.push_back(rational_field(b, "value"));
        }
        return {ShellPartition(ctx, std::move(balls)), std::move(values)};
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed step function: ") + e.what());
    }
}

json basis_manifest(const OperatorMatrix& mx) {
    json out;
    const PrimeParams& ctx = mx.basis().front().ctx();
    out["level"] = mx.level();
    out["p"] = ctx.p();
    out["m"] = ctx.m();
    json basis = json::array();
    for (const auto& b : mx.basis()) {
        basis.push_back({{"label", ball_label(b)}, {"v", b.v()}, {"k", b.k()}, {"center", b.center().get_str()}});
    }
    out["basis"] = std::move(basis);
    return out;
}

}  // namespace tate
