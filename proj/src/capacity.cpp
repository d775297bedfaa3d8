#include "darksts/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "darksts/csv.hpp"
#include "darksts/error.hpp"

namespace darksts::capacity {

double estimate_length(double w_px, double h_px, double resolution_m) {
    return std::hypot(w_px, h_px) * resolution_m;
}

namespace {

double regressor(double length, RegressionForm form) {
    return form == RegressionForm::LogLog ? std::log(length) : length;
}

}  // namespace

LengthDwtModel fit_loglinear(std::span<const LengthDwtSample> samples, RegressionForm form) {
    const std::size_t n = samples.size();
    if (n < 3) {
        throw Error(Errc::DegenerateInput, "need at least 3 samples");
    }
    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& s : samples) {
        if (!(s.length_m > 0.0) || !(s.dwt > 0.0)) {
            throw Error(Errc::DegenerateInput, "lengths and dwt must be positive");
        }
        mean_x += regressor(s.length_m, form);
        mean_y += std::log(s.dwt);
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    // centered sums keep the fit stable when x is far from zero
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& s : samples) {
        const double dx = regressor(s.length_m, form) - mean_x;
        const double dy = std::log(s.dwt) - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) {
        throw Error(Errc::DegenerateInput, "all lengths are equal");
    }
    LengthDwtModel m;
    m.form = form;
    m.n = n;
    m.b = sxy / sxx;
    m.a = mean_y - m.b * mean_x;
    m.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    return m;
}

double estimate_dwt(double length_m, const LengthDwtModel& model) {
    return std::exp(model.a + model.b * regressor(length_m, model.form));
}

double cargo_value(double barrels, double usd_per_barrel) {
    return barrels * usd_per_barrel;
}

std::string format_model(const LengthDwtModel& m) {
    return "a=" + csv::format_double(m.a) + " b=" + csv::format_double(m.b) +
           " r_squared=" + csv::format_double(m.r_squared) + " n=" + std::to_string(m.n) +
           " form=" + (m.form == RegressionForm::LogLog ? "loglog" : "loglinear");
}

LengthDwtModel parse_model(std::string_view text) {
    LengthDwtModel m;
    std::istringstream in{std::string(text)};
    std::string token;
    int seen = 0;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) {
            throw Error(Errc::MalformedRow, "bad model token: " + token);
        }
        const std::string key = token.substr(0, eq);
        const std::string_view value = std::string_view(token).substr(eq + 1);
        if (key == "form") {
            if (value == "loglog") m.form = RegressionForm::LogLog;
            else if (value == "loglinear") m.form = RegressionForm::LogLinear;
            else throw Error(Errc::MalformedRow, "bad model form");
            continue;
        }
        const auto v = csv::parse_double(value);
        if (!v) {
            throw Error(Errc::MalformedRow, "bad model value: " + token);
        }
        if (key == "a") { m.a = *v; ++seen; }
        else if (key == "b") { m.b = *v; ++seen; }
        else if (key == "r_squared") { m.r_squared = *v; ++seen; }
        else if (key == "n") { m.n = static_cast<std::size_t>(*v); ++seen; }
    }
    if (seen != 4) {
        throw Error(Errc::MalformedRow, "model record needs a, b, r_squared and n");
    }
    return m;
}

}  // namespace darksts::capacity
