#pragma once

#include <vector>

namespace gwl {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.  Needs >= 2 points.
LineFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace gwl
