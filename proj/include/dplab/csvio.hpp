#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dplab/functionals.hpp"
#include "dplab/grid.hpp"
#include "dplab/stability.hpp"

namespace dplab {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline constexpr const char* kCsvVersion = "dplab-csv v1";
inline constexpr const char* kSnapshotMagic = "DPSNAP01";

inline void write_invariant_csv(const std::string& path,
                                const std::vector<InvariantRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "# " << kCsvVersion << " invariants\n";
    out << "t,E1,E2,E3,F2,F3,min_slope,max_abs\n";
    for (const auto& r : records) {
        out << format_double(r.time) << ',' << format_double(r.e1) << ',' << format_double(r.e2)
            << ',' << format_double(r.e3) << ',' << format_double(r.f2) << ','
            << format_double(r.f3) << ',' << format_double(r.min_slope) << ','
            << format_double(r.max_abs) << '\n';
    }
}

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const {
        for (size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return static_cast<int>(i);
        throw std::runtime_error("csv: no column named " + name);
    }
};

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# " + std::string(kCsvVersion), 0) != 0)
        throw std::runtime_error("csv: bad or missing version header in " + path);
    if (!std::getline(in, line)) throw std::runtime_error("csv: missing column header in " + path);
    {
        std::istringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) table.columns.push_back(col);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != table.columns.size())
            throw std::runtime_error("csv: ragged row in " + path);
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline void write_certificate_csv(const std::string& path, const std::vector<double>& times,
                                  const std::vector<StabilityCertificate>& certs) {
    if (times.size() != certs.size())
        throw std::invalid_argument("write_certificate_csv: size mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "# " << kCsvVersion << " certificates\n";
    out << "t,An,Bn,M1,xi1,E2,E3,residual_E2,residual_E3,margin_318,P_at_M1,P_at_An,"
           "chain_lower,chain_upper,n_maxima\n";
    for (size_t i = 0; i < certs.size(); ++i) {
        const auto& c = certs[i];
        out << format_double(times[i]) << ',' << format_double(c.an) << ','
            << format_double(c.bn) << ',' << format_double(c.m1) << ',' << format_double(c.xi1)
            << ',' << format_double(c.e2) << ',' << format_double(c.e3) << ','
            << format_double(c.residual_e2) << ',' << format_double(c.residual_e3) << ','
            << format_double(c.margin_318) << ',' << format_double(c.p_at_m1) << ','
            << format_double(c.p_at_an) << ',' << format_double(c.chain_lower) << ','
            << format_double(c.chain_upper) << ',' << c.profile.n() << '\n';
    }
}

/// Snapshot file: magic "DPSNAP01", then little-endian int64 N, f64 L, f64 t,
/// then N f64 samples.
inline void write_snapshot(const std::string& path, const Field& f, double time) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(kSnapshotMagic, 8);
    const int64_t n = f.grid.point_count;
    const double l = f.grid.half_length;
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    out.write(reinterpret_cast<const char*>(&l), sizeof(l));
    out.write(reinterpret_cast<const char*>(&time), sizeof(time));
    out.write(reinterpret_cast<const char*>(f.values.data()),
              static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

inline Field read_snapshot(const std::string& path, double* time_out = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    char magic[8];
    in.read(magic, 8);
    if (in.gcount() != 8 || std::memcmp(magic, kSnapshotMagic, 8) != 0)
        throw std::runtime_error("snapshot: bad magic in " + path);
    int64_t n = 0;
    double l = 0.0, t = 0.0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    in.read(reinterpret_cast<char*>(&l), sizeof(l));
    in.read(reinterpret_cast<char*>(&t), sizeof(t));
    if (!in || n < 16) throw std::runtime_error("snapshot: bad header in " + path);
    Field f(make_grid(l, static_cast<int>(n)));
    in.read(reinterpret_cast<char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!f.all_finite() || !in) throw std::runtime_error("snapshot: truncated data in " + path);
    if (time_out) *time_out = t;
    return f;
}

}  // namespace dplab
