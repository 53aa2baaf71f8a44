#include "recipgrowth/datasets.hpp"

#include <array>

namespace recipgrowth {

namespace detail {
extern const char* const world_population_csv;
extern const char* const africa_population_csv;
extern const char* const western_europe_gdp_csv;
extern const char* const world_gdp_csv;
} // namespace detail

namespace {

struct Entry {
    std::string_view name;
    const char* const* text;
};

const std::array<Entry, 4>& table() {
    static const std::array<Entry, 4> entries = {{
        {"world_population", &detail::world_population_csv},
        {"africa_population", &detail::africa_population_csv},
        {"western_europe_gdp", &detail::western_europe_gdp_csv},
        {"world_gdp", &detail::world_gdp_csv},
    }};
    return entries;
}

} // namespace

const std::vector<std::string>& bundled_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : table()) out.emplace_back(e.name);
        return out;
    }();
    return names;
}

std::string_view bundled_csv(std::string_view name) {
    for (const auto& e : table())
        if (e.name == name) return *e.text;
    std::string valid;
    for (const auto& e : table()) {
        if (!valid.empty()) valid += ", ";
        valid += e.name;
    }
    throw NotFoundError("unknown bundled dataset '" + std::string(name) + "'; valid names: " + valid);
}

TimeSeries load_bundled(std::string_view name) {
    return parse_csv(bundled_csv(name));
}

} // namespace recipgrowth
