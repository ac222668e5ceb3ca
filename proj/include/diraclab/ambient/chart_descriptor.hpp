#pragma once

#include <filesystem>
#include <string_view>

#include "diraclab/ambient/chart.hpp"

namespace dlab::ambient {

/// Perturbation file: lines `key = value` with keys xx xy xz yy yz zz
/// (expressions in x, y, z, r), tau and mass (numbers). '#' starts a
/// comment. Missing components are zero.
PerturbationSpec load_perturbation(const std::filesystem::path& path);

/// euclidean, schwarzschild:m=1, spaceform:k=1, perturbed:file=path.
ChartPtr make_chart(std::string_view descriptor);

}  // namespace dlab::ambient
