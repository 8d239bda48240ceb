#include "recwalk/rng.hpp"

#include <cmath>

namespace recwalk::rng {

double NormalSampler::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller: u1 on (0,1] keeps the log argument positive.
    const double u1 = stream_.next_open_unit();
    const double u2 = stream_.next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

}  // namespace recwalk::rng
