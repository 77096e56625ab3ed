#pragma once

#include <filesystem>

#include "neurodyn/sim.hpp"

namespace neurodyn::dataset_io {

// JSON schema: {"version": 1, "dimension": d,
//               "class1": [[...], ...], "class2": [[...], ...]}.
// Loading verifies the separability assumption before returning.
void save_dataset(const sim::SeparableDataset& ds,
                  const std::filesystem::path& path);
sim::SeparableDataset load_dataset(const std::filesystem::path& path);

}  // namespace neurodyn::dataset_io
