#include "schrocvx/chirped_gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

namespace schrocvx {

namespace {

constexpr double kPi = std::numbers::pi;

// Principal log; inputs stay off the negative real axis for every operation
// that calls this (see branch note in the header).
cxd plog(cxd w) { return std::log(w); }

}  // namespace

ChirpedGaussian::ChirpedGaussian(int n, cxd log_amp, std::vector<cxd> z, std::vector<cxd> c)
    : dim(n), log_amplitude(log_amp), quad(std::move(z)), lin(std::move(c)) {
    validate(*this);
}

ChirpedGaussian ChirpedGaussian::axis1d(cxd z, cxd c, cxd log_amp) {
    return ChirpedGaussian(1, log_amp, {z}, {c});
}

ChirpedGaussian ChirpedGaussian::standard(int n) {
    return ChirpedGaussian(n, cxd{0.0, 0.0}, std::vector<cxd>(n, cxd{1.0, 0.0}),
                           std::vector<cxd>(n, cxd{0.0, 0.0}));
}

double ChirpedGaussian::min_decay_rate() const {
    double m = quad[0].real();
    for (const cxd& z : quad) m = std::min(m, z.real());
    return m;
}

bool ChirpedGaussian::is_radial() const {
    for (const cxd& z : quad)
        if (z != quad[0]) return false;
    for (const cxd& c : lin)
        if (c != cxd{0.0, 0.0}) return false;
    return true;
}

void validate(const ChirpedGaussian& g) {
    if (g.dim < 1) throw std::invalid_argument("ChirpedGaussian: dim must be >= 1");
    if (g.quad.size() != static_cast<std::size_t>(g.dim) ||
        g.lin.size() != static_cast<std::size_t>(g.dim))
        throw std::invalid_argument("ChirpedGaussian: coefficient count != dim");
    for (const cxd& z : g.quad)
        if (!(z.real() > 0.0))
            throw std::invalid_argument("ChirpedGaussian: Re quad[j] must be > 0");
}

cxd evaluate_log(const ChirpedGaussian& g, std::span<const cxd> point) {
    if (point.size() != static_cast<std::size_t>(g.dim))
        throw std::invalid_argument("evaluate: point dimension mismatch");
    cxd e = g.log_amplitude;
    for (int j = 0; j < g.dim; ++j) {
        const cxd x = point[j];
        e += -g.quad[j] * x * x + g.lin[j] * x;
    }
    return e;
}

cxd evaluate(const ChirpedGaussian& g, std::span<const cxd> point) {
    return std::exp(evaluate_log(g, point));
}

cxd evaluate_log(const ChirpedGaussian& g, cxd point) {
    return evaluate_log(g, std::span<const cxd>(&point, 1));
}

cxd evaluate(const ChirpedGaussian& g, cxd point) {
    return std::exp(evaluate_log(g, point));
}

ChirpedGaussian fourier(const ChirpedGaussian& g) {
    ChirpedGaussian r = g;
    for (int j = 0; j < g.dim; ++j) {
        const cxd z = g.quad[j], c = g.lin[j];
        r.quad[j] = 1.0 / (4.0 * z);
        r.lin[j] = cxd{0.0, -1.0} * c / (2.0 * z);
        r.log_amplitude += c * c / (4.0 * z) - 0.5 * plog(2.0 * z);
    }
    validate(r);
    return r;
}

ChirpedGaussian inverse_fourier(const ChirpedGaussian& g) {
    ChirpedGaussian r = g;
    for (int j = 0; j < g.dim; ++j) {
        const cxd z = g.quad[j], c = g.lin[j];
        r.quad[j] = 1.0 / (4.0 * z);
        r.lin[j] = cxd{0.0, 1.0} * c / (2.0 * z);
        r.log_amplitude += c * c / (4.0 * z) - 0.5 * plog(2.0 * z);
    }
    validate(r);
    return r;
}

ChirpedGaussian propagate(const ChirpedGaussian& g, double t) {
    if (t == 0.0) return g;
    ChirpedGaussian r = g;
    for (int j = 0; j < g.dim; ++j) {
        const cxd z = g.quad[j], c = g.lin[j];
        const cxd w = 1.0 + cxd{0.0, 4.0 * t} * z;
        r.quad[j] = z / w;
        r.lin[j] = c / w;
        r.log_amplitude += cxd{0.0, t} * c * c / w - 0.5 * plog(w);
    }
    validate(r);
    return r;
}

ChirpedGaussian heat(const ChirpedGaussian& g, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("heat: delta must be > 0");
    ChirpedGaussian r = g;
    for (int j = 0; j < g.dim; ++j) {
        const cxd z = g.quad[j], c = g.lin[j];
        const cxd w = 1.0 + 4.0 * delta * z;  // Re w > 1
        r.quad[j] = z / w;
        r.lin[j] = c / w;
        r.log_amplitude += delta * c * c / w - 0.5 * plog(w);
    }
    validate(r);
    return r;
}

ChirpedGaussian chirp(const ChirpedGaussian& g, double tau) {
    ChirpedGaussian r = g;
    for (cxd& z : r.quad) z -= cxd{0.0, tau};
    return r;
}

ChirpedGaussian boost(const ChirpedGaussian& g, std::span<const double> nu) {
    if (nu.size() != static_cast<std::size_t>(g.dim))
        throw std::invalid_argument("boost: nu dimension mismatch");
    ChirpedGaussian r = g;
    for (int j = 0; j < g.dim; ++j) r.lin[j] += cxd{0.0, nu[j]};
    return r;
}

ChirpedGaussian boost(const ChirpedGaussian& g, double nu) {
    return boost(g, std::span<const double>(&nu, 1));
}

ChirpedGaussian multiply(const ChirpedGaussian& g, const ChirpedGaussian& h) {
    if (g.dim != h.dim) throw std::invalid_argument("multiply: dimension mismatch");
    ChirpedGaussian r = g;
    r.log_amplitude += h.log_amplitude;
    for (int j = 0; j < g.dim; ++j) {
        r.quad[j] += h.quad[j];
        r.lin[j] += h.lin[j];
    }
    validate(r);
    return r;
}

ChirpedGaussian convolve(const ChirpedGaussian& g, const ChirpedGaussian& h) {
    if (g.dim != h.dim) throw std::invalid_argument("convolve: dimension mismatch");
    ChirpedGaussian r = inverse_fourier(multiply(fourier(g), fourier(h)));
    r.log_amplitude += 0.5 * g.dim * std::log(2.0 * kPi);
    return r;
}

ChirpedGaussian appel(const ChirpedGaussian& u0) {
    ChirpedGaussian fh = fourier(u0);
    ChirpedGaussian v = fh;
    v.log_amplitude = std::conj(fh.log_amplitude) - 0.5 * u0.dim * std::log(2.0);
    for (int j = 0; j < u0.dim; ++j) {
        v.quad[j] = std::conj(fh.quad[j]) / 4.0;
        v.lin[j] = std::conj(fh.lin[j]) / 2.0;
    }
    validate(v);
    return v;
}

ChirpedGaussian tensor_product(const ChirpedGaussian& u, const ChirpedGaussian& v) {
    ChirpedGaussian r;
    r.dim = u.dim + v.dim;
    r.log_amplitude = u.log_amplitude + v.log_amplitude;
    r.quad = u.quad;
    r.quad.insert(r.quad.end(), v.quad.begin(), v.quad.end());
    r.lin = u.lin;
    r.lin.insert(r.lin.end(), v.lin.begin(), v.lin.end());
    return r;
}

double log_l2_norm(const ChirpedGaussian& g) {
    // ||g||^2 = exp(2 Re log_amp) prod_j int exp(-2 Re z_j x^2 + 2 Re c_j x) dx
    double s = 2.0 * g.log_amplitude.real();
    for (int j = 0; j < g.dim; ++j) {
        const double a = 2.0 * g.quad[j].real();
        const double b = 2.0 * g.lin[j].real();
        s += 0.5 * std::log(kPi / a) + b * b / (4.0 * a);
    }
    return 0.5 * s;
}

std::string to_json(const ChirpedGaussian& g) {
    nlohmann::ordered_json j;
    j["dim"] = g.dim;
    j["log_amp"] = {g.log_amplitude.real(), g.log_amplitude.imag()};
    auto pairs = [](const std::vector<cxd>& v) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const cxd& z : v) a.push_back({z.real(), z.imag()});
        return a;
    };
    j["quad"] = pairs(g.quad);
    j["lin"] = pairs(g.lin);
    return j.dump();
}

ChirpedGaussian gaussian_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("gaussian_from_json: ") + e.what());
    }
    try {
        ChirpedGaussian g;
        g.dim = j.at("dim").get<int>();
        auto la = j.at("log_amp");
        g.log_amplitude = cxd{la.at(0).get<double>(), la.at(1).get<double>()};
        g.quad.clear();
        for (const auto& p : j.at("quad"))
            g.quad.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        g.lin.clear();
        for (const auto& p : j.at("lin"))
            g.lin.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        validate(g);
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("gaussian_from_json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("gaussian_from_json: ") + e.what());
    }
}

}  // namespace schrocvx
