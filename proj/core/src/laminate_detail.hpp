#pragma once

#include <vector>

#include "supcon/matspace.hpp"

namespace supcon {

/// Column-major rotation R in SO(n) with R e1 = nu.
std::vector<double> rotation_to(const std::vector<double>& nu);

/// sup |phi| of the simple-laminate sawtooth: |a| lambda (1 - lambda) / layers.
double simple_laminate_amplitude(const RankOneDirection& dir, double lambda, int layers);

}  // namespace supcon
