#pragma once

#include <filesystem>
#include <string>

#include "b4nls/field.hpp"

namespace b4nls {

/// Field snapshot with the equation parameters carried alongside.
///
/// Binary layout (little-endian, bit-exact):
///   magic  "B4NLS\0"            6 bytes
///   u32    version = 1
///   f64    L, a, b, alpha, t
///   u64    N
///   f64    (re, im) pairs       N samples in physical space, grid order
struct Snapshot {
    double a = 0.0;
    double b = 0.0;
    double alpha = 0.0;
    double t = 0.0;
    Field field;
};

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
Snapshot read_snapshot(const std::filesystem::path& path);

} // namespace b4nls
