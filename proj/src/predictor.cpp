#include "mpenergy/predictor.hpp"

#include <algorithm>
#include <stdexcept>

namespace mpenergy {

HoltWinters::HoltWinters(double rho, HwInit init) : rho_(rho), init_(init) {
    if (!(rho > 0 && rho < 1))
        throw std::domain_error("HoltWinters: rho must be in (0,1)");
}

void HoltWinters::update(double y) {
    if (y < 0)
        throw std::domain_error("HoltWinters: negative sample");
    if (count_ == 0) {
        level_ = y;
        trend_ = 0;
        first_sample_ = y;
    } else if (count_ == 1) {
        level_ = y;
        trend_ = init_ == HwInit::slope_init ? y - first_sample_ : first_sample_;
    } else {
        const double prev_level = level_;
        level_ = rho_ * y + (1.0 - rho_) * (level_ + trend_);
        trend_ = rho_ * (level_ - prev_level) + (1.0 - rho_) * trend_;
    }
    ++count_;
}

double HoltWinters::forecast(double h) const {
    if (!ready())
        throw std::logic_error("HoltWinters: forecast before two samples");
    return std::max(0.0, level_ + trend_ * h);
}

} // namespace mpenergy
