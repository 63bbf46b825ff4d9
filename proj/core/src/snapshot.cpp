#include "b4nls/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "b4nls/errors.hpp"

namespace b4nls {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot i/o assumes a little-endian host");

constexpr char kMagic[6] = {'B', '4', 'N', 'L', 'S', '\0'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::ifstream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

} // namespace

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw ConfigError("snapshot: cannot open for writing: " + path.string());
    os.write(kMagic, sizeof(kMagic));
    put(os, kVersion);
    put(os, snap.field.grid().half_period_scale());
    put(os, snap.a);
    put(os, snap.b);
    put(os, snap.alpha);
    put(os, snap.t);
    put(os, static_cast<std::uint64_t>(snap.field.size()));
    for (const auto& z : snap.field.values()) {
        put(os, z.real());
        put(os, z.imag());
    }
    if (!os)
        throw ConfigError("snapshot: write failed: " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw ConfigError("snapshot: cannot open: " + path.string());
    char magic[6];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw ConfigError("snapshot: bad magic in " + path.string());
    const auto version = get<std::uint32_t>(is);
    if (version != kVersion)
        throw ConfigError("snapshot: unsupported version in " + path.string());
    const double L = get<double>(is);
    const double a = get<double>(is);
    const double b = get<double>(is);
    const double alpha = get<double>(is);
    const double t = get<double>(is);
    const auto N = get<std::uint64_t>(is);
    if (!is)
        throw ConfigError("snapshot: truncated header in " + path.string());

    std::vector<cplx> vals(N);
    for (auto& z : vals) {
        const double re = get<double>(is);
        const double im = get<double>(is);
        z = cplx(re, im);
    }
    if (!is)
        throw ConfigError("snapshot: truncated data in " + path.string());

    auto grid = Grid::make(L, static_cast<std::size_t>(N));
    return Snapshot{a, b, alpha, t, Field(std::move(grid), std::move(vals))};
}

} // namespace b4nls
