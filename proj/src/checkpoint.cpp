#include "checkpoint.hpp"

#include "errors.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace t2flow {

namespace {

constexpr char kMagic[4] = {'T', '2', 'F', '1'};
constexpr uint32_t kVersion = 1;

void write_bytes(std::ofstream& f, const void* p, size_t n) {
    f.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void read_bytes(std::ifstream& f, void* p, size_t n, const std::string& path) {
    f.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (f.gcount() != static_cast<std::streamsize>(n))
        throw IoError("checkpoint truncated: " + path);
}

} // namespace

void save_checkpoint(const FieldState& state, const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw IoError("cannot open checkpoint for writing: " + path);
    write_bytes(f, kMagic, 4);
    const uint32_t version = kVersion;
    const uint32_t n = static_cast<uint32_t>(state.grid.n);
    write_bytes(f, &version, 4);
    write_bytes(f, &n, 4);
    write_bytes(f, &state.tau, 8);
    const uint8_t kappa = state.twist ? 1 : 0;
    write_bytes(f, &kappa, 1);
    for (const auto* a : {&state.v, &state.q, &state.rho, &state.ell, &state.pi_v, &state.pi_q})
        write_bytes(f, a->data(), 8 * a->size());
    f.flush();
    if (!f)
        throw IoError("checkpoint write failed: " + path);
}

FieldState load_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open checkpoint: " + path);
    char magic[4];
    read_bytes(f, magic, 4, path);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("not a t2flow checkpoint (bad magic): " + path);
    uint32_t version = 0, n = 0;
    read_bytes(f, &version, 4, path);
    if (version != kVersion)
        throw IoError("unsupported checkpoint version " + std::to_string(version));
    read_bytes(f, &n, 4, path);
    if (n < 16 || n % 2 != 0 || n > 16'000'000)
        throw IoError("checkpoint has implausible grid size " + std::to_string(n));
    double tau = 0.0;
    read_bytes(f, &tau, 8, path);
    uint8_t kappa = 0;
    read_bytes(f, &kappa, 1, path);
    if (kappa > 1)
        throw IoError("checkpoint has invalid twist flag");

    FieldState state{PeriodicGrid(static_cast<int>(n))};
    state.tau = tau;
    state.twist = kappa;
    for (auto* a : {&state.v, &state.q, &state.rho, &state.ell, &state.pi_v, &state.pi_q})
        read_bytes(f, a->data(), 8 * a->size(), path);
    state.validate();
    return state;
}

} // namespace t2flow
