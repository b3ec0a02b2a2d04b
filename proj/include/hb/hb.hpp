#pragma once

#include "hb/building.hpp"
#include "hb/discriminant.hpp"
#include "hb/eisenstein.hpp"
#include "hb/fourier.hpp"
#include "hb/oracle.hpp"
#include "hb/units.hpp"
#include "hb/verify.hpp"

namespace hb {
inline constexpr const char* kVersion = "0.1.0";
}
