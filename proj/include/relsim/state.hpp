#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace relsim {

// State of the two-element system: regime flags (0 = working, 1 = repair)
// plus elapsed time in the current regime, in seconds.
struct State {
    int i = 0;
    double x = 0.0;
    int j = 0;
    double y = 0.0;

    friend bool operator==(const State&, const State&) = default;
};

// Deterministic drift between jumps: both elapsed-time clocks advance at
// unit rate, flags stay put.
inline State flow(const State& z, double s) {
    if (!(s >= 0.0) || !std::isfinite(s))
        throw std::invalid_argument("flow: duration must be finite and >= 0");
    return {z.i, z.x + s, z.j, z.y + s};
}

// Regime switch of element 1: flip i, reset its clock.
inline State jump_cn(const State& z) {
    return {1 - z.i, 0.0, z.j, z.y};
}

// Regime switch of element 2: flip j, reset its clock.
inline State jump_nc(const State& z) {
    return {z.i, z.x, 1 - z.j, 0.0};
}

enum class Component : int { first = 0, second = 1 };

inline State apply_jump(const State& z, Component c) {
    return c == Component::first ? jump_cn(z) : jump_nc(z);
}

}  // namespace relsim
