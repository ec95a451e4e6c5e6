#pragma once

namespace mpenergy {

/// How the level/trend pair is seeded from the first two samples.
/// `slope_init` is the standard Holt start (trend = Y2 - Y1). `literal`
/// seeds the trend with the previous *level* sample (trend = Y1), which
/// makes a constant series forecast c*(1+h); kept selectable for fidelity
/// comparisons against deployments that do it that way.
enum class HwInit { slope_init, literal };

/// Double-exponential (level + trend) smoother over throughput samples,
/// single smoothing weight rho for both recurrences:
///   a <- rho*y + (1-rho)(a + b)
///   b <- rho*(a - a_prev) + (1-rho)*b
/// Forecast h steps ahead is a + b*h, floored at zero.
class HoltWinters {
public:
    explicit HoltWinters(double rho = 0.125, HwInit init = HwInit::slope_init);

    /// Ingest one sample (Mbps). Throws std::domain_error on negative input.
    void update(double y);

    /// h-step-ahead prediction; requires at least two samples
    /// (throws std::logic_error before that).
    double forecast(double h) const;

    bool ready() const { return count_ >= 2; }
    double level() const { return level_; }
    double trend() const { return trend_; }
    double rho() const { return rho_; }
    int sample_count() const { return count_; }

private:
    double rho_;
    HwInit init_;
    double level_ = 0;
    double trend_ = 0;
    double first_sample_ = 0;
    int count_ = 0;
};

} // namespace mpenergy
