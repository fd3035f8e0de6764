#pragma once

#include <filesystem>

#include "colombeau/eps_net.hpp"

namespace colombeau {

/// Writes a grid-valued net as item_NNN.bin snapshots (raw little-endian
/// complex doubles, real part first) plus manifest.txt recording the
/// eps grid, grid parameters and label.
void save_net(const FieldNet& net, const std::filesystem::path& dir);
FieldNet load_net(const std::filesystem::path& dir);

/// Scalar nets live entirely in the manifest.
void save_scalar_net(const ScalarNet& net, const std::filesystem::path& dir);
ScalarNet load_scalar_net(const std::filesystem::path& dir);

}  // namespace colombeau
