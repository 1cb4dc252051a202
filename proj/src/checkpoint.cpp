#include "tcm/checkpoint.hpp"

#include "tcm/fft.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian");

namespace tcm {

namespace {

constexpr char kMagic[4] = {'T', 'C', 'M', '1'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void write_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

double read_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

} // namespace

void save_checkpoint(const State& state, double alpha, double beta,
                     const std::string& path) {
    State p = to_physical(state);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os)
        throw std::runtime_error("save_checkpoint: cannot open '" + path + "'");

    const Grid& g = p.grid();
    os.write(kMagic, 4);
    write_u32(os, kVersion);
    write_u32(os, static_cast<std::uint32_t>(g.n1()));
    write_u32(os, static_cast<std::uint32_t>(g.n2()));
    write_u32(os, static_cast<std::uint32_t>(g.n3()));
    write_f64(os, g.l1());
    write_f64(os, g.l2());
    write_f64(os, g.l3());
    write_f64(os, alpha);
    write_f64(os, beta);
    write_f64(os, p.time);

    auto write_array = [&](const Field& f) {
        os.write(reinterpret_cast<const char*>(f.phys().data()),
                 static_cast<std::streamsize>(f.phys().size() * sizeof(double)));
    };
    for (int c = 0; c < 3; ++c)
        write_array(p.u[c]);
    for (int c = 0; c < 3; ++c)
        write_array(p.v[c]);
    write_array(p.theta);
    if (!os)
        throw std::runtime_error("save_checkpoint: write failed for '" + path + "'");
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("load_checkpoint: cannot open '" + path + "'");

    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("load_checkpoint: bad magic in '" + path + "'");
    const std::uint32_t version = read_u32(is);
    if (version != kVersion)
        throw std::runtime_error("load_checkpoint: unsupported version");

    const int n1 = static_cast<int>(read_u32(is));
    const int n2 = static_cast<int>(read_u32(is));
    const int n3 = static_cast<int>(read_u32(is));
    const double l1 = read_f64(is);
    const double l2 = read_f64(is);
    const double l3 = read_f64(is);

    Checkpoint chk;
    chk.alpha = read_f64(is);
    chk.beta = read_f64(is);
    const double time = read_f64(is);

    GridPtr grid = make_grid(n1, n2, n3, l1, l2, l3);
    chk.state.u = VectorField(grid, Rep::physical);
    chk.state.v = VectorField(grid, Rep::physical);
    chk.state.theta = Field(grid, Rep::physical);
    chk.state.time = time;

    auto read_array = [&](Field& f) {
        is.read(reinterpret_cast<char*>(f.phys().data()),
                static_cast<std::streamsize>(f.phys().size() * sizeof(double)));
    };
    for (int c = 0; c < 3; ++c)
        read_array(chk.state.u[c]);
    for (int c = 0; c < 3; ++c)
        read_array(chk.state.v[c]);
    read_array(chk.state.theta);
    if (!is)
        throw std::runtime_error("load_checkpoint: truncated file '" + path + "'");
    return chk;
}

} // namespace tcm
