#include "heis/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace heis {

static_assert(std::endian::native == std::endian::little, "field container assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'H', 'E', 'I', 'S', 'F', 'L', 'D', '\0'};

template <class V>
void put(std::ostream& os, V v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(V));
}

template <class V>
V get(std::istream& is) {
    V v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(V));
    if (!is) throw std::runtime_error("field container truncated");
    return v;
}

void write_header(std::ostream& os, const BoxGrid& g, std::uint32_t kind) {
    os.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(os, kFieldFormatVersion);
    put<std::uint32_t>(os, kind);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(g.dim()));
    for (const auto& a : g.axes()) {
        put<double>(os, a.lower);
        put<double>(os, a.upper);
        put<std::uint64_t>(os, a.count);
    }
}

BoxGrid read_header(std::istream& is, std::uint32_t& kind) {
    char magic[8];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, kMagic, sizeof magic) != 0) throw std::runtime_error("not a field container");
    const auto version = get<std::uint32_t>(is);
    if (version != kFieldFormatVersion) throw std::runtime_error("unsupported field container version");
    kind = get<std::uint32_t>(is);
    if (kind > 1) throw std::runtime_error("unknown field value kind");
    const auto dim = get<std::uint32_t>(is);
    std::vector<Axis> axes(dim);
    for (auto& a : axes) {
        a.lower = get<double>(is);
        a.upper = get<double>(is);
        a.count = static_cast<std::size_t>(get<std::uint64_t>(is));
    }
    return BoxGrid(std::move(axes));
}

}  // namespace

void write_field(std::ostream& os, const ScalarField& f) {
    write_header(os, f.grid(), 1);
    for (const auto& v : f.values()) {
        put<double>(os, v.real());
        put<double>(os, v.imag());
    }
    if (!os) throw std::runtime_error("failed writing field container");
}

void write_field(std::ostream& os, const RealField& f) {
    write_header(os, f.grid(), 0);
    for (double v : f.values()) put<double>(os, v);
    if (!os) throw std::runtime_error("failed writing field container");
}

template <class F>
static void write_to_path(const std::string& path, const F& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_field(os, f);
}

void write_field(const std::string& path, const ScalarField& f) { write_to_path(path, f); }
void write_field(const std::string& path, const RealField& f) { write_to_path(path, f); }

ScalarField read_field(std::istream& is) {
    std::uint32_t kind = 0;
    BoxGrid g = read_header(is, kind);
    ScalarField f(g);
    for (auto& v : f.values()) {
        const double re = get<double>(is);
        const double im = kind == 1 ? get<double>(is) : 0.0;
        v = cplx(re, im);
    }
    return f;
}

ScalarField read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_field(is);
}

RealField read_real_field(std::istream& is) {
    std::uint32_t kind = 0;
    BoxGrid g = read_header(is, kind);
    if (kind != 0) throw std::runtime_error("field container holds complex values");
    RealField f(g);
    for (auto& v : f.values()) v = get<double>(is);
    return f;
}

}  // namespace heis
