#include "nlslab/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace nlslab {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    if (v == 0.0) return "0";  // collapse -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
    return v;
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (u >> (8 * i)) & 0xff;
    os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= std::uint64_t(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}
}  // namespace

void write_field(const std::string& path, const Field& field) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_field: cannot open " + path);
    os.write("NLSF", 4);
    put_u32(os, kVersion);
    put_u32(os, static_cast<std::uint32_t>(field.grid.n));
    put_f64(os, field.grid.box_length);
    for (const cplx& z : field.values) {
        put_f64(os, z.real());
        put_f64(os, z.imag());
    }
    if (!os) throw std::runtime_error("write_field: write failure on " + path);
}

Field read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_field: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (std::memcmp(magic, "NLSF", 4) != 0) {
        throw std::runtime_error("read_field: bad magic in " + path);
    }
    const std::uint32_t version = get_u32(is);
    if (version != kVersion) throw std::runtime_error("read_field: unsupported version");
    const int n = static_cast<int>(get_u32(is));
    const double box_length = get_f64(is);
    Field field(Grid2D(n, box_length));
    for (cplx& z : field.values) {
        const double re = get_f64(is);
        const double im = get_f64(is);
        z = cplx{re, im};
    }
    if (!is) throw std::runtime_error("read_field: truncated file " + path);
    return field;
}

void write_trajectory(const std::string& dir, const Trajectory& traj) {
    fs::create_directories(dir);
    json index;
    index["dt"] = traj.config.dt;
    index["stride"] = traj.config.snapshot_stride;
    index["times"] = traj.times;
    char name[32];
    for (std::size_t k = 0; k < traj.fields.size(); ++k) {
        std::snprintf(name, sizeof(name), "snap_%06zu.nlsf", k);
        write_field((fs::path(dir) / name).string(), traj.fields[k]);
    }
    write_text_file((fs::path(dir) / "index.json").string(), index.dump(2) + "\n");
}

Trajectory read_trajectory(const std::string& dir) {
    const json index = json::parse(read_text_file((fs::path(dir) / "index.json").string()));
    Trajectory traj;
    traj.config.dt = index.at("dt").get<double>();
    traj.config.snapshot_stride = index.at("stride").get<int>();
    traj.times = index.at("times").get<std::vector<double>>();
    char name[32];
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        std::snprintf(name, sizeof(name), "snap_%06zu.nlsf", k);
        traj.fields.push_back(read_field((fs::path(dir) / name).string()));
    }
    if (!traj.fields.empty()) {
        traj.config.grid = traj.fields.front().grid;
        traj.config.t_end = traj.times.back();
    }
    return traj;
}

void CsvTable::add_row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    rows.push_back(std::move(cells));
}

void CsvTable::add_row(const std::vector<std::string>& cells) { rows.push_back(cells); }

void write_csv(const std::string& path, const CsvTable& table) {
    std::ostringstream os;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) os << ',';
        os << table.header[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw std::invalid_argument("write_csv: row width mismatch");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << row[i];
        }
        os << '\n';
    }
    write_text_file(path, os.str());
}

void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRecord>& records) {
    CsvTable table;
    table.header = {"t", "mass", "energy", "e_iu", "px", "py", "ma", "ma2", "l4acc", "c0", "c1"};
    for (const auto& r : records) {
        table.add_row(std::vector<double>{r.t, r.mass, r.energy, r.e_iu, r.px, r.py, r.ma,
                                          r.ma2, r.l4acc, r.c0, r.c1});
    }
    write_csv(path, table);
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_text_file: cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_text_file: cannot open " + path);
    os << content;
    if (!os) throw std::runtime_error("write_text_file: write failure on " + path);
}

}  // namespace nlslab
