#include "pacdyn/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ios>
#include <sstream>
#include <string_view>

namespace pacdyn {

namespace {

constexpr int kDigits = 17;

double parse_double(std::string_view text, const std::string& context) {
    // strtod rather than stod: subnormal values must read back instead of throwing.
    const std::string s(text);
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw IoError(context + ": not a number: '" + s + "'");
    while (*end == ' ' || *end == '\r') ++end;
    if (*end != '\0') throw IoError(context + ": trailing characters in '" + s + "'");
    return v;
}

long parse_long(std::string_view text, const std::string& context) {
    long v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw IoError(context + ": not an integer: '" + std::string(text) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

/// Value of `key=` within a header line, up to the next space.
std::string_view header_value(std::string_view line, std::string_view key) {
    const std::string pattern = std::string(key) + "=";
    std::size_t pos = line.find(pattern);
    while (pos != std::string_view::npos && pos > 0 && line[pos - 1] != ' ') {
        pos = line.find(pattern, pos + 1);
    }
    if (pos == std::string_view::npos) throw IoError("snapshot header: missing " + std::string(key));
    const std::size_t start = pos + pattern.size();
    const std::size_t end = line.find(' ', start);
    return line.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

} // namespace

void write_snapshot(std::ostream& os, const GridSpec& g, const Field& u, double t, long step,
                    double kappa, const SurfacePotentialSpec& s) {
    g.check(u);
    os << std::setprecision(kDigits);
    os << "# N=" << g.cells() << " t=" << t << " step=" << step << '\n';
    os << "# kappa=" << kappa << " surface=" << s.name() << '\n';
    const int side = g.nodes_per_side();
    for (int j = 0; j < side; ++j) {
        for (int i = 0; i < side; ++i) {
            if (i > 0) os << ',';
            os << u[g.node(i, j)];
        }
        os << '\n';
    }
}

Snapshot read_snapshot(std::istream& is) {
    std::string line1, line2;
    if (!std::getline(is, line1) || !std::getline(is, line2)) throw IoError("snapshot: missing header");
    line1 = strip_cr(line1);
    line2 = strip_cr(line2);
    if (line1.rfind("# ", 0) != 0 || line2.rfind("# ", 0) != 0) {
        throw IoError("snapshot: header lines must start with '# '");
    }
    Snapshot snap;
    const long n = parse_long(header_value(line1, "N"), "snapshot header N");
    if (n < 4 || n > (1L << 15)) throw IoError("snapshot header: N out of range");
    snap.N = static_cast<int>(n);
    snap.t = parse_double(header_value(line1, "t"), "snapshot header t");
    snap.step = parse_long(header_value(line1, "step"), "snapshot header step");
    snap.kappa = parse_double(header_value(line2, "kappa"), "snapshot header kappa");
    snap.surface = std::string(header_value(line2, "surface"));

    const GridSpec g(snap.N);
    snap.u = Field(g.node_count());
    const int side = g.nodes_per_side();
    std::string line;
    for (int j = 0; j < side; ++j) {
        if (!std::getline(is, line)) throw IoError("snapshot: expected " + std::to_string(side) + " rows");
        line = strip_cr(line);
        const auto cells = split(line, ',');
        if (static_cast<int>(cells.size()) != side) {
            throw IoError("snapshot row " + std::to_string(j) + ": expected " + std::to_string(side) + " values");
        }
        for (int i = 0; i < side; ++i) {
            snap.u[g.node(i, j)] = parse_double(cells[i], "snapshot row " + std::to_string(j));
        }
    }
    return snap;
}

Snapshot read_snapshot_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open snapshot " + path);
    return read_snapshot(in);
}

std::string snapshot_filename(long step) { return "snap_" + std::to_string(step) + ".csv"; }

void write_series_header(std::ostream& os) { os << kSeriesHeader << '\n'; }

void write_series_row(std::ostream& os, const DiagRecord& r) {
    os << std::setprecision(kDigits) << r.step << ',' << r.time << ',' << r.mass_bulk << ','
       << r.mass_surf << ',' << r.energy_bulk << ',' << r.energy_surf << ',' << r.energy_total << ','
       << r.steady_residual << ',' << r.solver_iterations << '\n';
}

std::vector<DiagRecord> read_series(std::istream& is) {
    std::stringstream buffer;
    buffer << is.rdbuf();
    std::string text = buffer.str();
    // Drop an unterminated final line: it was cut off by an interrupted writer.
    const std::size_t last_newline = text.rfind('\n');
    text.resize(last_newline == std::string::npos ? 0 : last_newline + 1);

    std::istringstream lines(text);
    std::string line;
    if (!std::getline(lines, line) || strip_cr(line) != kSeriesHeader) {
        throw IoError("series.csv: missing or unexpected header");
    }
    std::vector<DiagRecord> out;
    long lineno = 1;
    while (std::getline(lines, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto c = split(line, ',');
        const std::string ctx = "series.csv line " + std::to_string(lineno);
        if (c.size() != 9) throw IoError(ctx + ": expected 9 columns");
        DiagRecord r;
        r.step = parse_long(c[0], ctx);
        r.time = parse_double(c[1], ctx);
        r.mass_bulk = parse_double(c[2], ctx);
        r.mass_surf = parse_double(c[3], ctx);
        r.energy_bulk = parse_double(c[4], ctx);
        r.energy_surf = parse_double(c[5], ctx);
        r.energy_total = parse_double(c[6], ctx);
        r.steady_residual = parse_double(c[7], ctx);
        r.solver_iterations = static_cast<int>(parse_long(c[8], ctx));
        out.push_back(r);
    }
    return out;
}

} // namespace pacdyn
