#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace darksts::capacity {

/// Ship length from a pixel bounding box, taking the box diagonal as the hull.
double estimate_length(double w_px, double h_px, double resolution_m);

enum class RegressionForm {
    LogLog,     // ln(dwt) = a + b * ln(length)
    LogLinear,  // ln(dwt) = a + b * length
};

struct LengthDwtModel {
    double a = 0.0;
    double b = 0.0;
    double r_squared = 0.0;
    std::size_t n = 0;
    RegressionForm form = RegressionForm::LogLog;
};

struct LengthDwtSample {
    double length_m = 0.0;
    double dwt = 0.0;
};

/// Ordinary least squares of ln(dwt) on ln(length) (or on length).
/// Throws Error{DegenerateInput} for n < 3, non-positive values or zero
/// variance in the regressor.
LengthDwtModel fit_loglinear(std::span<const LengthDwtSample> samples,
                             RegressionForm form = RegressionForm::LogLog);

double estimate_dwt(double length_m, const LengthDwtModel& model);

/// barrels * price, unrounded.
double cargo_value(double barrels, double usd_per_barrel);

/// "a=<a> b=<b> r_squared=<r2> n=<n> form=<loglog|loglinear>"
std::string format_model(const LengthDwtModel& model);
LengthDwtModel parse_model(std::string_view text);

}  // namespace darksts::capacity
