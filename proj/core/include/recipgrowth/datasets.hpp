#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "recipgrowth/series.hpp"

namespace recipgrowth {

/// Identifiers of the bundled historical snapshots, in canonical order:
/// world_population, africa_population, western_europe_gdp, world_gdp.
const std::vector<std::string>& bundled_names();

/// Load a bundled snapshot by identifier. Population series are in billions
/// of persons, GDP series in billions of 1990 International Geary-Khamis
/// dollars; the embedded CSV text records source and transcription notes in
/// directive comments. Throws NotFoundError listing the valid names when
/// the identifier is unknown.
TimeSeries load_bundled(std::string_view name);

/// Raw CSV text of a bundled snapshot (exactly what load_bundled parses).
std::string_view bundled_csv(std::string_view name);

} // namespace recipgrowth
