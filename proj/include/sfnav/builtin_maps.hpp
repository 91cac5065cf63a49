#pragma once

#include <string>
#include <vector>

#include "sfnav/maze.hpp"

namespace sfnav {

// Bundled maze suite: map2 adds interior walls to map1; map4 relocates both
// obstacles and the goal relative to map3 (goal tucked into a corner).
bool is_builtin_map(const std::string& name);
const std::string& builtin_map_text(const std::string& name);
std::vector<std::string> builtin_map_names();

// Accepts a builtin name ("map1".."map4") or a file path.
MazeMap resolve_map(const std::string& name_or_path);

} // namespace sfnav
