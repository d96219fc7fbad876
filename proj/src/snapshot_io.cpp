#include "mnls/snapshot_io.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mnls {

static_assert(std::endian::native == std::endian::little,
              "snapshot files are little-endian; big-endian hosts are unsupported");

namespace {
std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}
}  // namespace

void write_snapshot(const std::string& path, const ComplexField& f,
                    const std::string& name, double time) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
    out << "mnls-field 1\n";
    out << "dim 3\n";
    out << "n " << f.grid.n << "\n";
    out << "box_half_length " << format_double(f.grid.box_half_length) << "\n";
    out << "offset 0.5\n";
    out << "name " << name << "\n";
    out << "time " << format_double(time) << "\n";
    out << "data\n";
    out.write(reinterpret_cast<const char*>(f.v.data()),
              static_cast<std::streamsize>(sizeof(cplx) * f.v.size()));
    if (!out) throw std::runtime_error("write_snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
    std::string line;

    auto next = [&](const std::string& key) {
        if (!std::getline(in, line))
            throw std::runtime_error("read_snapshot: truncated header in " + path);
        if (line.rfind(key, 0) != 0)
            throw std::runtime_error("read_snapshot: expected '" + key + "' in " + path +
                                     ", got '" + line + "'");
        return line.size() > key.size() + 1 ? line.substr(key.size() + 1) : std::string{};
    };

    next("mnls-field");
    if (std::stoi(next("dim")) != 3)
        throw std::runtime_error("read_snapshot: only dim 3 fields are supported");
    const int n = std::stoi(next("n"));
    const double box = std::stod(next("box_half_length"));
    if (std::stod(next("offset")) != 0.5)
        throw std::runtime_error("read_snapshot: unexpected grid offset");
    Snapshot snap;
    snap.name = next("name");
    snap.time = std::stod(next("time"));
    next("data");

    snap.field = ComplexField(Grid(n, box));
    in.read(reinterpret_cast<char*>(snap.field.v.data()),
            static_cast<std::streamsize>(sizeof(cplx) * snap.field.v.size()));
    if (in.gcount() != static_cast<std::streamsize>(sizeof(cplx) * snap.field.v.size()))
        throw std::runtime_error("read_snapshot: truncated sample data in " + path);
    return snap;
}

}  // namespace mnls
