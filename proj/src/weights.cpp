#include "schrocvx/weights.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace schrocvx {

std::string kind_name(WeightKind k) {
    switch (k) {
        case WeightKind::linear: return "linear";
        case WeightKind::gaussian_iso: return "gaussian_iso";
        case WeightKind::gaussian_aniso: return "gaussian_aniso";
        case WeightKind::power_axis: return "power_axis";
        case WeightKind::power_radial: return "power_radial";
        case WeightKind::interaction_gaussian: return "interaction_gaussian";
        case WeightKind::interaction_distance: return "interaction_distance";
    }
    throw std::logic_error("kind_name: bad enum");
}

WeightKind kind_from_name(const std::string& name) {
    for (WeightKind k : {WeightKind::linear, WeightKind::gaussian_iso, WeightKind::gaussian_aniso,
                         WeightKind::power_axis, WeightKind::power_radial,
                         WeightKind::interaction_gaussian, WeightKind::interaction_distance})
        if (kind_name(k) == name) return k;
    throw ConfigError("unknown weight kind: " + name);
}

WeightSpec WeightSpec::trivial(int dim) {
    WeightSpec w;
    w.kind = WeightKind::linear;
    w.lambda.assign(dim, 0.0);
    return w;
}

WeightSpec WeightSpec::make_linear(std::vector<double> lambda, double s) {
    WeightSpec w;
    w.kind = WeightKind::linear;
    w.lambda = std::move(lambda);
    w.scale = s;
    validate(w);
    return w;
}

WeightSpec WeightSpec::make_gaussian_iso(double s) {
    WeightSpec w;
    w.kind = WeightKind::gaussian_iso;
    w.scale = s;
    validate(w);
    return w;
}

WeightSpec WeightSpec::make_gaussian_aniso(std::vector<double> gamma, double s) {
    WeightSpec w;
    w.kind = WeightKind::gaussian_aniso;
    w.gamma = std::move(gamma);
    w.scale = s;
    validate(w);
    return w;
}

WeightSpec WeightSpec::make_power_axis(std::vector<double> p, std::vector<double> gamma, double s) {
    WeightSpec w;
    w.kind = WeightKind::power_axis;
    w.p_axis = std::move(p);
    w.gamma = std::move(gamma);
    w.scale = s;
    validate(w);
    return w;
}

WeightSpec WeightSpec::make_power_radial(double p, double s) {
    WeightSpec w;
    w.kind = WeightKind::power_radial;
    w.p = p;
    w.scale = s;
    validate(w);
    return w;
}

WeightSpec WeightSpec::make_interaction_gaussian(double s) {
    WeightSpec w;
    w.kind = WeightKind::interaction_gaussian;
    w.scale = s;
    validate(w);
    return w;
}

WeightSpec WeightSpec::make_interaction_distance() {
    WeightSpec w;
    w.kind = WeightKind::interaction_distance;
    return w;
}

void validate(const WeightSpec& w) {
    if (!(w.scale > 0.0)) throw std::invalid_argument("WeightSpec: scale must be > 0");
    for (double g : w.gamma)
        if (!(g >= 0.0)) throw std::invalid_argument("WeightSpec: gamma_j must be >= 0");
    if (w.kind == WeightKind::power_axis) {
        if (w.p_axis.size() != w.gamma.size())
            throw std::invalid_argument("WeightSpec: p_axis/gamma size mismatch");
        for (double p : w.p_axis)
            if (!(p > 1.0 && p <= 2.0))
                throw std::invalid_argument("WeightSpec: p_j must lie in (1,2]");
    }
    if (w.kind == WeightKind::power_radial && !(w.p > 1.0 && w.p <= 2.0))
        throw std::invalid_argument("WeightSpec: p must lie in (1,2]");
}

bool is_interaction(const WeightSpec& w) {
    return w.kind == WeightKind::interaction_gaussian ||
           w.kind == WeightKind::interaction_distance;
}

double weight_log_multiplier(const WeightSpec& w, const std::vector<double>& x) {
    const std::size_t n = x.size();
    switch (w.kind) {
        case WeightKind::linear: {
            if (w.lambda.size() != n)
                throw std::invalid_argument("weight: lambda dimension mismatch");
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += w.lambda[j] * x[j];
            return s / w.scale;
        }
        case WeightKind::gaussian_iso: {
            double s = 0.0;
            for (double v : x) s += v * v;
            return s / (w.scale * w.scale);
        }
        case WeightKind::gaussian_aniso: {
            if (w.gamma.size() != n)
                throw std::invalid_argument("weight: gamma dimension mismatch");
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += w.gamma[j] * x[j] * x[j];
            return s / (w.scale * w.scale);
        }
        case WeightKind::power_axis: {
            if (w.gamma.size() != n)
                throw std::invalid_argument("weight: gamma dimension mismatch");
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                s += w.gamma[j] * std::pow(std::abs(x[j] / w.scale), w.p_axis[j]);
            return s;
        }
        case WeightKind::power_radial: {
            double s = 0.0;
            for (double v : x) s += v * v;
            return std::pow(std::sqrt(s) / w.scale, w.p);
        }
        case WeightKind::interaction_gaussian: {
            if (n % 2 != 0)
                throw std::invalid_argument("interaction weight needs even dimension");
            double s = 0.0;
            for (std::size_t j = 0; j < n / 2; ++j) {
                const double d = x[j] - x[n / 2 + j];
                s += d * d;
            }
            return s / (w.scale * w.scale);
        }
        case WeightKind::interaction_distance: {
            if (n % 2 != 0)
                throw std::invalid_argument("interaction weight needs even dimension");
            double s = 0.0;
            for (std::size_t j = 0; j < n / 2; ++j) {
                const double d = x[j] - x[n / 2 + j];
                s += d * d;
            }
            return 0.5 * std::log(s);  // log |x-y|
        }
    }
    throw std::logic_error("weight_log_multiplier: bad enum");
}

std::string to_json(const WeightSpec& w) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(w.kind);
    j["scale"] = w.scale;
    switch (w.kind) {
        case WeightKind::linear: j["lambda"] = w.lambda; break;
        case WeightKind::gaussian_aniso: j["gamma"] = w.gamma; break;
        case WeightKind::power_axis:
            j["p"] = w.p_axis;
            j["gamma"] = w.gamma;
            break;
        case WeightKind::power_radial: j["p"] = w.p; break;
        default: break;
    }
    return j.dump();
}

WeightSpec weight_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("weight_from_json: ") + e.what());
    }
    try {
        WeightSpec w;
        w.kind = kind_from_name(j.at("kind").get<std::string>());
        w.scale = j.value("scale", 1.0);
        if (j.contains("lambda")) w.lambda = j["lambda"].get<std::vector<double>>();
        if (j.contains("gamma")) w.gamma = j["gamma"].get<std::vector<double>>();
        if (w.kind == WeightKind::power_axis && j.contains("p"))
            w.p_axis = j["p"].get<std::vector<double>>();
        if (w.kind == WeightKind::power_radial && j.contains("p")) w.p = j["p"].get<double>();
        validate(w);
        return w;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("weight_from_json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("weight_from_json: ") + e.what());
    }
}

void validate(const ScheduleScale& s) {
    if (!(s.alpha >= 0.0)) throw std::invalid_argument("ScheduleScale: alpha must be >= 0");
    if (!(s.beta > 0.0)) throw std::invalid_argument("ScheduleScale: beta must be > 0");
}

}  // namespace schrocvx
