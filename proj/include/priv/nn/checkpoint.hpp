#pragma once

#include <string>

#include "priv/nn/net.hpp"
#include "priv/nn/vae.hpp"

namespace priv::nn {

// Versioned little-endian binary checkpoints. Doubles are stored as their
// exact 64-bit patterns, so save/load round-trips are bit-identical.
void save_network(const Network& net, const std::string& path);
Network load_network(const std::string& path);

void save_vae(const VaeModel& model, const std::string& path);
VaeModel load_vae(const std::string& path);

}  // namespace priv::nn
