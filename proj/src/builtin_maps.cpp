#include "sfnav/builtin_maps.hpp"

#include <map>

namespace sfnav {

namespace {

const std::string kMap1 = "#########\n"
                          "#.......#\n"
                          "#.##....#\n"
                          "#.......#\n"
                          "#...##..#\n"
                          "#.......#\n"
                          "#..#....#\n"
                          "#......G#\n"
                          "#########\n";

const std::string kMap2 = "#########\n"
                          "#.......#\n"
                          "#.##.##.#\n"
                          "#.......#\n"
                          "#.#.##..#\n"
                          "#.......#\n"
                          "#.##.#..#\n"
                          "#......G#\n"
                          "#########\n";

const std::string kMap3 = "#############\n"
                          "#...........#\n"
                          "#.##...##...#\n"
                          "#.##...##...#\n"
                          "#......##...#\n"
                          "#...#.......#\n"
                          "#...#..G....#\n"
                          "#...#.......#\n"
                          "#.......##..#\n"
                          "#..##...##..#\n"
                          "#..##.......#\n"
                          "#...........#\n"
                          "#############\n";

const std::string kMap4 = "#############\n"
                          "#...........#\n"
                          "#.....#.....#\n"
                          "#.....#.....#\n"
                          "#.....#.....#\n"
                          "#...........#\n"
                          "#....##.....#\n"
                          "#...........#\n"
                          "#........####\n"
                          "#..........G#\n"
                          "#...........#\n"
                          "#...........#\n"
                          "#############\n";

const std::map<std::string, const std::string*>& registry() {
    static const std::map<std::string, const std::string*> maps = {
        {"map1", &kMap1},
        {"map2", &kMap2},
        {"map3", &kMap3},
        {"map4", &kMap4},
    };
    return maps;
}

} // namespace

bool is_builtin_map(const std::string& name) {
    return registry().count(name) > 0;
}

const std::string& builtin_map_text(const std::string& name) {
    auto it = registry().find(name);
    if (it == registry().end()) throw MapError("unknown builtin map: " + name);
    return *it->second;
}

std::vector<std::string> builtin_map_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : registry()) names.push_back(name);
    return names;
}

MazeMap resolve_map(const std::string& name_or_path) {
    if (is_builtin_map(name_or_path)) {
        return load_map(builtin_map_text(name_or_path), name_or_path);
    }
    return load_map_file(name_or_path);
}

} // namespace sfnav
