#include "robustcut/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "robustcut/errors.hpp"
#include "robustcut/records.hpp"
#include "robustcut/scaling.hpp"

namespace robustcut {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    return in;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

bool is_skippable(std::string_view line) {
    for (char c : line) {
        if (c == '#') return true;
        if (c != ' ' && c != '\t' && c != '\r') return false;
    }
    return true;
}

struct RawRow {
    std::vector<double> values;
    std::size_t line;
};

bool is_label_value(double v) { return v == 0.0 || v == 1.0; }

}  // namespace

Loaded<EmpiricalDataset> parse_dataset(std::istream& in) {
    std::vector<RawRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_skippable(line)) continue;
        RawRow row{{}, lineno};
        for (auto field : split(line, ',')) row.values.push_back(parse_real(field, lineno));
        if (!rows.empty() && row.values.size() != rows.front().values.size())
            throw ParseError("expected " + std::to_string(rows.front().values.size()) +
                                 " columns, found " + std::to_string(row.values.size()),
                             lineno);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("dataset file is empty", 0);

    const std::size_t cols = rows.front().values.size();
    if (cols < 2) throw ParseError("need at least one coordinate and a label", rows.front().line);

    // The mass column exists iff some last-column entry is not a valid label.
    bool has_mass = false;
    for (const auto& r : rows)
        if (!is_label_value(r.values.back())) has_mass = true;
    if (has_mass && cols < 3) {
        for (const auto& r : rows)
            if (!is_label_value(r.values.back()))
                throw ParseError("label must be 0 or 1, found " + format_real(r.values.back()), r.line);
    }

    const std::size_t dim = has_mass ? cols - 2 : cols - 1;
    std::vector<double> coords;
    std::vector<std::uint8_t> labels;
    std::vector<double> weights;
    coords.reserve(rows.size() * dim);
    for (const auto& r : rows) {
        const double label = r.values[dim];
        if (!is_label_value(label))
            throw ParseError("label must be 0 or 1, found " + format_real(label), r.line);
        for (std::size_t k = 0; k < dim; ++k) {
            if (!std::isfinite(r.values[k])) throw ParseError("non-finite coordinate", r.line);
            coords.push_back(r.values[k]);
        }
        labels.push_back(static_cast<std::uint8_t>(label));
        if (has_mass) {
            const double m = r.values[dim + 1];
            if (!(m > 0.0) || !std::isfinite(m))
                throw ParseError("mass must be positive, found " + format_real(m), r.line);
            weights.push_back(m);
        }
    }

    Loaded<EmpiricalDataset> out;
    if (!has_mass) {
        out.value = EmpiricalDataset(dim, std::move(coords), std::move(labels));
        return out;
    }
    const double total = accurate_sum(weights);
    if (std::abs(total - 1.0) > 1e-9)
        out.warnings.push_back("masses summed to " + format_real(total) + "; renormalised to 1");
    if (std::abs(total - 1.0) <= 1e-12)
        out.value = EmpiricalDataset(dim, std::move(coords), std::move(labels), std::move(weights));
    else
        out.value = EmpiricalDataset::from_weights(dim, std::move(coords), std::move(labels),
                                                   std::move(weights));
    return out;
}

Loaded<EmpiricalDataset> load_dataset(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_dataset(in);
}

void write_dataset(std::ostream& out, const EmpiricalDataset& ds) {
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (double x : ds.point(i)) out << format_real(x) << ',';
        out << int(ds.label(i)) << ',' << format_real(ds.mass(i)) << '\n';
    }
}

namespace {

std::vector<double> parse_numbers_line(std::istringstream& ss, std::size_t lineno) {
    std::vector<double> v;
    std::string tok;
    while (ss >> tok) v.push_back(parse_real(tok, lineno));
    return v;
}

Loaded<GridMeasure> finish_grid(GridGeometry geometry, std::vector<double> dens0,
                                std::vector<double> dens1) {
    Loaded<GridMeasure> out;
    double total = 0.0;
    for (double v : dens0) total += v;
    for (double v : dens1) total += v;
    if (!(total > 0.0)) throw ParseError("grid has zero total mass", 0);
    if (std::abs(total - 1.0) > 1e-9) {
        out.warnings.push_back("cell masses summed to " + format_real(total) + "; renormalised to 1");
        out.value = GridMeasure::normalized(std::move(geometry), std::move(dens0), std::move(dens1));
    } else {
        out.value = GridMeasure(std::move(geometry), std::move(dens0), std::move(dens1));
    }
    return out;
}

}  // namespace

Loaded<GridMeasure> parse_grid(std::istream& in) {
    std::vector<std::size_t> dims;
    std::vector<double> spacing, origin, dens0, dens1;
    enum class Section { Header, Dens0, Dens1 } section = Section::Header;
    std::string line;
    std::size_t lineno = 0;
    bool any = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_skippable(line)) continue;
        any = true;
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "dens0" || key == "dens1") {
            if (dims.empty()) throw ParseError("'dims' must precede the density blocks", lineno);
            if (key == "dens0" && section != Section::Header)
                throw ParseError("duplicate dens0 block", lineno);
            if (key == "dens1" && section != Section::Dens0)
                throw ParseError("dens1 block must follow dens0", lineno);
            section = key == "dens0" ? Section::Dens0 : Section::Dens1;
            auto rest = parse_numbers_line(ss, lineno);
            auto& dst = section == Section::Dens0 ? dens0 : dens1;
            dst.insert(dst.end(), rest.begin(), rest.end());
            continue;
        }
        if (section != Section::Header) {
            std::istringstream all(line);
            auto vals = parse_numbers_line(all, lineno);
            for (double v : vals)
                if (!(v >= 0.0) || !std::isfinite(v))
                    throw ParseError("cell masses must be finite and >= 0", lineno);
            auto& dst = section == Section::Dens0 ? dens0 : dens1;
            dst.insert(dst.end(), vals.begin(), vals.end());
            continue;
        }
        if (key == "dims") {
            std::string tok;
            while (ss >> tok) {
                const double v = parse_real(tok, lineno);
                if (!(v >= 1.0) || v != std::floor(v)) throw ParseError("dims must be positive integers", lineno);
                dims.push_back(static_cast<std::size_t>(v));
            }
        } else if (key == "spacing") {
            spacing = parse_numbers_line(ss, lineno);
        } else if (key == "origin") {
            origin = parse_numbers_line(ss, lineno);
        } else {
            throw ParseError("unknown header key '" + key + "'", lineno);
        }
    }
    if (!any) throw ParseError("grid file is empty", 0);
    if (section != Section::Dens1) throw ParseError("grid file needs dens0 and dens1 blocks", lineno);
    GridGeometry geometry;
    try {
        geometry = GridGeometry(dims, spacing, origin);
    } catch (const InputError& e) {
        throw ParseError(e.what(), 0);
    }
    if (dens0.size() != geometry.cell_count() || dens1.size() != geometry.cell_count())
        throw ParseError("expected " + std::to_string(geometry.cell_count()) +
                             " values per density block, found " + std::to_string(dens0.size()) +
                             " and " + std::to_string(dens1.size()),
                         0);
    return finish_grid(std::move(geometry), std::move(dens0), std::move(dens1));
}

Loaded<GridMeasure> load_grid(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_grid(in);
}

void write_grid(std::ostream& out, const GridMeasure& gm) {
    const auto& g = gm.geometry();
    out << "dims";
    for (auto d : g.dims()) out << ' ' << d;
    out << "\nspacing";
    for (auto h : g.spacing()) out << ' ' << format_real(h);
    out << "\norigin";
    for (auto o : g.origin()) out << ' ' << format_real(o);
    out << '\n';
    const std::size_t row = g.dims().back();
    auto block = [&](const char* name, std::span<const double> v) {
        out << name << '\n';
        for (std::size_t c = 0; c < v.size(); ++c)
            out << format_real(v[c]) << ((c + 1) % row == 0 ? '\n' : ' ');
    };
    block("dens0", gm.dens0());
    block("dens1", gm.dens1());
}

namespace {

std::vector<std::vector<double>> read_csv_matrix(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::vector<std::vector<double>> m;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_skippable(line)) continue;
        std::vector<double> row;
        for (auto f : split(line, ',')) {
            const double v = parse_real(f, lineno);
            if (!(v >= 0.0) || !std::isfinite(v)) throw ParseError("cell masses must be >= 0", lineno);
            row.push_back(v);
        }
        if (!m.empty() && row.size() != m.front().size())
            throw ParseError("ragged CSV matrix", lineno);
        m.push_back(std::move(row));
    }
    if (m.empty()) throw ParseError("empty CSV matrix '" + path.string() + "'", 0);
    return m;
}

}  // namespace

Loaded<GridMeasure> load_grid_csv_pair(const std::filesystem::path& dens0_csv,
                                       const std::filesystem::path& dens1_csv,
                                       std::vector<double> spacing, std::vector<double> origin) {
    const auto a = read_csv_matrix(dens0_csv);
    const auto b = read_csv_matrix(dens1_csv);
    if (a.size() != b.size() || a.front().size() != b.front().size())
        throw ParseError("dens0 and dens1 matrices differ in shape", 0);
    std::vector<double> d0, d1;
    for (const auto& r : a) d0.insert(d0.end(), r.begin(), r.end());
    for (const auto& r : b) d1.insert(d1.end(), r.begin(), r.end());
    GridGeometry g({a.size(), a.front().size()}, std::move(spacing), std::move(origin));
    return finish_grid(std::move(g), std::move(d0), std::move(d1));
}

void write_mask_pbm(std::ostream& out, const CellMask& mask) {
    const std::size_t width = mask.geometry().dims().back();
    const std::size_t height = mask.size() / width;
    out << "P1\n" << width << ' ' << height << '\n';
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            if (c) out << ' ';
            out << (mask[r * width + c] ? '1' : '0');
        }
        out << '\n';
    }
}

void write_mask_csv(std::ostream& out, const CellMask& mask) {
    const std::size_t width = mask.geometry().dims().back();
    for (std::size_t c = 0; c < mask.size(); ++c)
        out << (mask[c] ? '1' : '0') << ((c + 1) % width == 0 ? '\n' : ',');
}

CellMask read_mask(std::istream& in, const GridGeometry& geometry) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<std::uint8_t> bits;
    std::size_t pos = text.find_first_not_of(" \t\r\n");
    const bool pbm = pos != std::string::npos && text.compare(pos, 2, "P1") == 0;
    std::size_t lineno = 1;
    std::size_t numbers_seen = 0;
    std::size_t width = 0, height = 0;
    for (std::size_t i = pbm ? pos + 2 : 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n') ++lineno;
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            ++lineno;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || (!pbm && c == ',')) continue;
        if (pbm && numbers_seen < 2) {
            std::size_t v = 0;
            if (c < '0' || c > '9') throw ParseError("bad PBM header", lineno);
            while (i < text.size() && text[i] >= '0' && text[i] <= '9') v = v * 10 + (text[i++] - '0');
            --i;
            (numbers_seen++ == 0 ? width : height) = v;
            continue;
        }
        if (c != '0' && c != '1') throw ParseError(std::string("unexpected character '") + c + "' in mask", lineno);
        bits.push_back(c == '1' ? 1 : 0);
    }
    if (pbm && width * height != geometry.cell_count())
        throw ParseError("PBM size does not match grid cell count", 0);
    if (bits.size() != geometry.cell_count())
        throw ParseError("mask has " + std::to_string(bits.size()) + " cells, grid has " +
                             std::to_string(geometry.cell_count()),
                         0);
    return CellMask(geometry, std::move(bits));
}

CellMask load_mask(const std::filesystem::path& path, const GridGeometry& geometry) {
    auto in = open_input(path);
    return read_mask(in, geometry);
}

}  // namespace robustcut
