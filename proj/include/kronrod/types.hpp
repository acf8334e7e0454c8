#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace kronrod {

using cdouble = std::complex<double>;
using CVector = std::vector<cdouble>;

// One bit per element, values 0 or 1.
using Bits = std::vector<std::uint8_t>;

}  // namespace kronrod
