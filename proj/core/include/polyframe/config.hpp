#pragma once

#include "polyframe/frames.hpp"

#include <cstdint>
#include <string>

namespace polyframe {

/// Run-wide settings. The seed drives every randomised step.
struct Config {
  std::uint64_t seed = 0x5eed;
  std::size_t carrier_cap = kDefaultCarrierCap;
  std::size_t samples = 100;
  std::string format = "json";
  int digits = 6;
};

}  // namespace polyframe
