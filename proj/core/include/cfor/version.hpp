#pragma once

#include <string>

namespace cfor {

/// Library version, e.g. "0.1.0".
std::string version();

/// Version string of the linked FFTW library.
std::string fftw_version();

}  // namespace cfor
