#include "cfor/version.hpp"

#include <fftw3.h>

namespace cfor {

std::string version() { return CFOR_VERSION; }

std::string fftw_version() { return ::fftw_version; }

}  // namespace cfor
