#include "fftstencil/grid_io.hpp"

#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fftstencil {

namespace {

std::string meta_path(const std::string& path) { return path + ".meta"; }

// Shortest decimal that round-trips to the same double.
std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, const std::string& where) {
    double v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw IoError(where + ": bad number '" + std::string(text) + "'");
    return v;
}

Index parse_index(std::string_view text, const std::string& where) {
    Index v = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw IoError(where + ": bad integer '" + std::string(text) + "'");
    return v;
}

void write_csv(const FieldGrid& g, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    const int m = g.shape.fields();
    std::vector<Index> idx(g.shape.rank(), 0);
    Index cell = 0;
    do {
        for (int f = 0; f < m; ++f) {
            for (Index i : idx) out << i << ',';
            out << f << ',' << format_double(g.data[cell * m + f]) << '\n';
        }
        ++cell;
    } while (next_index(idx, g.shape.dims()));
    if (!out) throw IoError("write failed on '" + path + "'");
}

FieldGrid read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::vector<std::vector<std::string>> rows;
    std::string line;
    size_t lineno = 0;
    size_t columns = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> parts;
        std::stringstream ss(line);
        std::string part;
        while (std::getline(ss, part, ',')) parts.push_back(part);
        if (parts.size() < 3)
            throw IoError(path + ":" + std::to_string(lineno) +
                          ": expected 'i1,...,id,f,value'");
        if (columns == 0) columns = parts.size();
        if (parts.size() != columns)
            throw IoError(path + ":" + std::to_string(lineno) +
                          ": inconsistent column count");
        rows.push_back(std::move(parts));
    }
    if (rows.empty()) throw IoError(path + ": empty grid file");

    const int rank = static_cast<int>(columns) - 2;
    std::vector<Index> dims(rank, 0);
    Index max_field = 0;
    for (size_t r = 0; r < rows.size(); ++r) {
        const std::string where = path + ":" + std::to_string(r + 1);
        for (int a = 0; a < rank; ++a)
            dims[a] = std::max(dims[a], parse_index(rows[r][a], where) + 1);
        max_field = std::max(max_field, parse_index(rows[r][rank], where));
    }
    GridShape shape(dims, static_cast<int>(max_field) + 1);
    if (shape.values() != static_cast<Index>(rows.size()))
        throw IoError(path + ": got " + std::to_string(rows.size()) +
                      " lines for a grid of " + std::to_string(shape.values()) +
                      " values");

    FieldGrid g(shape);
    std::vector<Index> idx(rank);
    std::vector<bool> seen(shape.values(), false);
    for (size_t r = 0; r < rows.size(); ++r) {
        const std::string where = path + ":" + std::to_string(r + 1);
        for (int a = 0; a < rank; ++a) idx[a] = parse_index(rows[r][a], where);
        const Index f = parse_index(rows[r][rank], where);
        if (f < 0 || f >= shape.fields()) throw IoError(where + ": field out of range");
        const Index pos = shape.flatten(idx) * shape.fields() + f;
        if (seen[pos]) throw IoError(where + ": duplicate cell");
        seen[pos] = true;
        g.data[pos] = parse_double(rows[r][rank + 1], where);
        if (!std::isfinite(g.data[pos])) throw IoError(where + ": non-finite value");
    }
    return g;
}

void write_raw(const FieldGrid& g, const std::string& path) {
    {
        std::ofstream out(path, std::ios::trunc | std::ios::binary);
        if (!out) throw IoError("cannot open '" + path + "' for writing");
        static_assert(std::endian::native == std::endian::little,
                      "raw format is little-endian");
        out.write(reinterpret_cast<const char*>(g.data.data()),
                  static_cast<std::streamsize>(g.shape.values() * sizeof(double)));
        if (!out) throw IoError("write failed on '" + path + "'");
    }
    std::ofstream meta(meta_path(path), std::ios::trunc);
    if (!meta) throw IoError("cannot open '" + meta_path(path) + "' for writing");
    meta << "dims =";
    for (Index d : g.shape.dims()) meta << ' ' << d;
    meta << "\nfields = " << g.shape.fields()
         << "\ndtype = float64\norder = row-major\n";
    if (!meta) throw IoError("write failed on '" + meta_path(path) + "'");
}

FieldGrid read_raw(const std::string& path) {
    std::ifstream meta(meta_path(path));
    if (!meta) throw IoError("cannot open '" + meta_path(path) + "'");
    std::vector<Index> dims;
    int fields = -1;
    std::string line;
    size_t lineno = 0;
    while (std::getline(meta, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw IoError(meta_path(path) + ":" + std::to_string(lineno) +
                          ": expected 'key = value'");
        std::stringstream key_ss(line.substr(0, eq)), val_ss(line.substr(eq + 1));
        std::string key;
        key_ss >> key;
        if (key == "dims") {
            Index d;
            while (val_ss >> d) dims.push_back(d);
        } else if (key == "fields") {
            val_ss >> fields;
        } else if (key == "dtype") {
            std::string v;
            val_ss >> v;
            if (v != "float64")
                throw IoError(meta_path(path) + ": unsupported dtype '" + v + "'");
        } else if (key == "order") {
            std::string v;
            val_ss >> v;
            if (v != "row-major")
                throw IoError(meta_path(path) + ": unsupported order '" + v + "'");
        } else {
            throw IoError(meta_path(path) + ":" + std::to_string(lineno) +
                          ": unknown key '" + key + "'");
        }
    }
    if (dims.empty() || fields < 1)
        throw IoError(meta_path(path) + ": missing dims or fields");

    GridShape shape(dims, fields);
    const auto expected =
        static_cast<std::uintmax_t>(shape.values()) * sizeof(double);
    std::error_code ec;
    const auto actual = std::filesystem::file_size(path, ec);
    if (ec) throw IoError("cannot stat '" + path + "'");
    if (actual != expected)
        throw IoError(path + ": expected " + std::to_string(expected) +
                      " bytes, got " + std::to_string(actual));

    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    FieldGrid g(shape);
    in.read(reinterpret_cast<char*>(g.data.data()),
            static_cast<std::streamsize>(expected));
    if (in.gcount() != static_cast<std::streamsize>(expected))
        throw IoError(path + ": short read");
    return g;
}

} // namespace

void write_grid(const FieldGrid& g, const std::string& path, GridFormat format) {
    if (format == GridFormat::Csv)
        write_csv(g, path);
    else
        write_raw(g, path);
}

FieldGrid read_grid(const std::string& path) {
    if (std::filesystem::exists(meta_path(path))) return read_raw(path);
    return read_csv(path);
}

} // namespace fftstencil
