#pragma once

// Weight abstraction for the exponentially weighted norms. A weight is an
// amplitude multiplier exp(phi(x)) applied before taking L^2:
//
//   linear               phi = lambda.x / s
//   gaussian_iso         phi = |x|^2 / s^2
//   gaussian_aniso       phi = sum_j gamma_j x_j^2 / s^2
//   power_axis           phi = sum_j gamma_j |x_j/s|^{p_j},  p_j in (1,2]
//   power_radial         phi = |x/s|^p,                      p in (1,2]
//   interaction_gaussian phi = |x-y|^2 / s^2   (on tensor coordinates (x,y))
//   interaction_distance the polynomial multiplier |x-y| itself
//
// All norms are "weight applied to amplitude then L^2", i.e. ||e^phi u||_2;
// squares appear only inside implementations.

#include <string>
#include <vector>

#include "schrocvx/errors.hpp"

namespace schrocvx {

enum class WeightKind {
    linear,
    gaussian_iso,
    gaussian_aniso,
    power_axis,
    power_radial,
    interaction_gaussian,
    interaction_distance,
};

std::string kind_name(WeightKind k);
WeightKind kind_from_name(const std::string& name);

struct WeightSpec {
    WeightKind kind = WeightKind::linear;
    double scale = 1.0;           // s > 0
    std::vector<double> lambda;   // linear
    std::vector<double> gamma;    // gaussian_aniso, power_axis; gamma_j >= 0
    std::vector<double> p_axis;   // power_axis, p_j in (1,2]
    double p = 2.0;               // power_radial

    static WeightSpec trivial(int dim);  // lambda = 0 linear weight
    static WeightSpec make_linear(std::vector<double> lambda, double s);
    static WeightSpec make_gaussian_iso(double s);
    static WeightSpec make_gaussian_aniso(std::vector<double> gamma, double s);
    static WeightSpec make_power_axis(std::vector<double> p, std::vector<double> gamma, double s);
    static WeightSpec make_power_radial(double p, double s);
    static WeightSpec make_interaction_gaussian(double s);
    static WeightSpec make_interaction_distance();
};

void validate(const WeightSpec& w);

bool is_interaction(const WeightSpec& w);

// phi(x) at a real point (for interaction kinds, x holds the tensor
// coordinates and must have even length; interaction_distance returns
// log|x - y|, the log of the polynomial multiplier).
double weight_log_multiplier(const WeightSpec& w, const std::vector<double>& x);

// JSON with a "kind" discriminator string matching the kind names above.
std::string to_json(const WeightSpec& w);
WeightSpec weight_from_json(const std::string& text);

// Time-dependent weight scale s(t) = alpha t + beta of the convexity
// schedules; alpha >= 0, beta > 0.
struct ScheduleScale {
    double alpha = 1.0;
    double beta = 1.0;

    double scale_at(double t) const { return alpha * t + beta; }
};

void validate(const ScheduleScale& s);

}  // namespace schrocvx
