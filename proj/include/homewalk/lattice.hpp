// Integer lattice primitives: grid points and the four cardinal directions.
#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace homewalk {

struct GridPoint {
    std::int64_t x = 0;  // east positive
    std::int64_t y = 0;  // north positive

    friend constexpr GridPoint operator+(GridPoint a, GridPoint b) {
        return {a.x + b.x, a.y + b.y};
    }
    friend constexpr GridPoint operator-(GridPoint a, GridPoint b) {
        return {a.x - b.x, a.y - b.y};
    }
    constexpr GridPoint& operator+=(GridPoint b) {
        x += b.x;
        y += b.y;
        return *this;
    }
    friend constexpr bool operator==(GridPoint a, GridPoint b) = default;
};

constexpr std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

constexpr std::int64_t l1_norm(GridPoint p) {
    return abs64(p.x) + abs64(p.y);
}

constexpr std::int64_t max_norm(GridPoint p) {
    return std::max(abs64(p.x), abs64(p.y));
}

enum class Direction : std::uint8_t { North = 0, East = 1, South = 2, West = 3 };

constexpr std::array<Direction, 4> kAllDirections = {Direction::North, Direction::East,
                                                     Direction::South, Direction::West};

constexpr GridPoint displacement(Direction d) {
    switch (d) {
        case Direction::North: return {0, 1};
        case Direction::East: return {1, 0};
        case Direction::South: return {0, -1};
        case Direction::West: return {-1, 0};
    }
    return {0, 0};
}

constexpr char direction_char(Direction d) {
    switch (d) {
        case Direction::North: return 'N';
        case Direction::East: return 'E';
        case Direction::South: return 'S';
        case Direction::West: return 'W';
    }
    return '?';
}

inline std::string to_string(GridPoint p) {
    return std::to_string(p.x) + "," + std::to_string(p.y);
}

}  // namespace homewalk
