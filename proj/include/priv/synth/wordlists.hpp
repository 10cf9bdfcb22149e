#pragma once

#include <array>

namespace priv::synth {

// Bundled constants; the generator never reads external input.
const std::array<const char*, 200>& first_names();
const std::array<const char*, 200>& last_names();

}  // namespace priv::synth
