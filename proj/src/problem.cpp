#include "fftstencil/problem.hpp"

#include <fstream>

#include <json.hpp>

#include "fftstencil/stencils.hpp"

namespace fftstencil {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known)
            throw SpecError("spec: unknown key '" + key + "' in " + where);
    }
}

GridShape parse_shape(const json& j) {
    if (!j.is_object()) throw SpecError("spec: 'shape' must be an object");
    require_keys(j, "shape", {"dims", "fields"});
    if (!j.contains("dims")) throw SpecError("spec: shape needs 'dims'");
    std::vector<Index> dims = j.at("dims").get<std::vector<Index>>();
    int fields = j.value("fields", 1);
    return GridShape(std::move(dims), fields);
}

StencilKernel parse_kernel(const json& j, const GridShape& shape) {
    if (j.is_string()) {
        StencilKernel k = builtin_stencil(j.get<std::string>());
        if (k.rank() != shape.rank())
            throw SpecError("spec: stencil '" + j.get<std::string>() + "' is " +
                            std::to_string(k.rank()) + "-D but the grid is " +
                            std::to_string(shape.rank()) + "-D");
        return k;
    }
    if (!j.is_object()) throw SpecError("spec: 'kernel' must be a name or object");
    require_keys(j, "kernel", {"taps"});
    if (!j.contains("taps")) throw SpecError("spec: kernel needs 'taps'");

    StencilKernel k(shape.rank(), shape.fields());
    for (const auto& tap : j.at("taps")) {
        require_keys(tap, "kernel.taps[]", {"offset", "value", "block"});
        if (!tap.contains("offset")) throw SpecError("spec: tap needs 'offset'");
        auto off = tap.at("offset").get<std::vector<Index>>();
        if (tap.contains("value")) {
            if (shape.fields() != 1)
                throw SpecError("spec: scalar tap 'value' on a multi-field grid");
            k.add_tap(std::move(off), tap.at("value").get<double>());
        } else if (tap.contains("block")) {
            auto rows = tap.at("block").get<std::vector<std::vector<double>>>();
            const int m = shape.fields();
            Eigen::MatrixXd block(m, m);
            if (static_cast<int>(rows.size()) != m)
                throw SpecError("spec: tap block must be fields x fields");
            for (int r = 0; r < m; ++r) {
                if (static_cast<int>(rows[r].size()) != m)
                    throw SpecError("spec: tap block must be fields x fields");
                for (int c = 0; c < m; ++c) block(r, c) = rows[r][c];
            }
            k.add_tap(std::move(off), block);
        } else {
            throw SpecError("spec: tap needs 'value' or 'block'");
        }
    }
    return k;
}

void parse_boundary(const json& j, const GridShape& shape, ProblemSpec& spec) {
    if (j.is_string()) {
        if (j.get<std::string>() != "periodic")
            throw SpecError("spec: boundary string must be 'periodic'");
        spec.periodic = true;
        return;
    }
    if (!j.is_object()) throw SpecError("spec: 'boundary' must be a string or object");
    require_keys(j, "boundary", {"dirichlet", "dirichlet_profile"});
    spec.periodic = false;
    if (j.contains("dirichlet")) {
        const auto& v = j.at("dirichlet");
        Eigen::VectorXd vals;
        if (v.is_number()) {
            vals = Eigen::VectorXd::Constant(shape.fields(), v.get<double>());
        } else {
            auto list = v.get<std::vector<double>>();
            if (static_cast<int>(list.size()) != shape.fields())
                throw SpecError("spec: dirichlet needs one value per field");
            vals = Eigen::Map<Eigen::VectorXd>(list.data(), list.size());
        }
        spec.boundary = BoundaryRule::dirichlet(vals);
    } else if (j.contains("dirichlet_profile")) {
        std::unordered_map<Index, double> table;
        for (const auto& entry : j.at("dirichlet_profile")) {
            require_keys(entry, "boundary.dirichlet_profile[]",
                         {"cell", "field", "value"});
            auto cell_idx = entry.at("cell").get<std::vector<Index>>();
            const Index cell = shape.flatten(cell_idx);
            const Index field = entry.value("field", 0);
            if (field < 0 || field >= shape.fields())
                throw SpecError("spec: profile field out of range");
            table[cell * shape.fields() + field] = entry.at("value").get<double>();
        }
        spec.boundary = BoundaryRule::dirichlet_profile(std::move(table));
    } else {
        throw SpecError("spec: boundary object needs 'dirichlet' or 'dirichlet_profile'");
    }
}

void parse_init(const json& j, ProblemSpec& spec) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "zeros")
            spec.init = InitKind::Zeros;
        else if (s == "delta")
            spec.init = InitKind::Delta;
        else
            throw SpecError("spec: init must be zeros, delta, {random}, or {file}");
        return;
    }
    if (!j.is_object()) throw SpecError("spec: bad 'init'");
    require_keys(j, "init", {"random", "file"});
    if (j.contains("random")) {
        const auto& r = j.at("random");
        require_keys(r, "init.random", {"seed"});
        if (!r.contains("seed"))
            throw SpecError("spec: init.random needs a 'seed'");
        spec.init = InitKind::Random;
        spec.seed = r.at("seed").get<std::uint64_t>();
    } else if (j.contains("file")) {
        spec.init = InitKind::File;
        spec.init_file = j.at("file").get<std::string>();
    } else {
        throw SpecError("spec: init object needs 'random' or 'file'");
    }
}

template <typename Enum>
Enum parse_choice(const json& j, const std::string& key,
                  std::initializer_list<std::pair<const char*, Enum>> table) {
    const auto s = j.get<std::string>();
    for (const auto& [name, value] : table)
        if (s == name) return value;
    std::string allowed;
    for (const auto& [name, value] : table) allowed += std::string(" ") + name;
    throw SpecError("spec: '" + key + "' must be one of" + allowed);
}

ProblemSpec parse_json(const json& j) {
    if (!j.is_object()) throw SpecError("spec: top level must be an object");
    require_keys(j, "spec", {"shape", "kernel", "boundary", "T", "solver", "cutoff",
                             "init", "output", "mode"});
    for (const char* required : {"shape", "kernel", "boundary", "T"})
        if (!j.contains(required))
            throw SpecError(std::string("spec: missing required key '") + required + "'");

    ProblemSpec spec;
    spec.shape = parse_shape(j.at("shape"));
    spec.kernel = parse_kernel(j.at("kernel"), spec.shape);
    spec.kernel.require_fits(spec.shape);
    parse_boundary(j.at("boundary"), spec.shape, spec);
    if (!spec.periodic && spec.kernel.radius() < 1)
        throw SpecError("spec: aperiodic boundaries need stencil radius >= 1");

    if (!j.at("T").is_number_unsigned())
        throw SpecError("spec: 'T' must be a nonnegative integer");
    spec.timesteps = j.at("T").get<std::uint64_t>();

    if (j.contains("solver"))
        spec.solver = parse_choice<SolverChoice>(
            j.at("solver"), "solver",
            {{"fft", SolverChoice::Fft}, {"naive", SolverChoice::Naive},
             {"both", SolverChoice::Both}});
    if (j.contains("cutoff")) {
        spec.cutoff = j.at("cutoff").get<Index>();
        if (spec.cutoff < 1) throw SpecError("spec: cutoff must be positive");
    }
    if (j.contains("init")) parse_init(j.at("init"), spec);
    if (j.contains("output"))
        spec.output = parse_choice<OutputFormat>(
            j.at("output"), "output",
            {{"csv", OutputFormat::Csv}, {"raw", OutputFormat::Raw},
             {"none", OutputFormat::None}});
    if (j.contains("mode"))
        spec.mode = parse_choice<RunMode>(
            j.at("mode"), "mode",
            {{"solve", RunMode::Solve}, {"verify", RunMode::Verify},
             {"bench", RunMode::Bench}, {"accuracy", RunMode::Accuracy}});
    return spec;
}

} // namespace

ProblemSpec parse_problem_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open spec file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw SpecError("spec: " + path + ": " + e.what());
    }
    return parse_json(j);
}

ProblemSpec parse_problem_spec_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("spec: ") + e.what());
    }
    return parse_json(j);
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

FieldGrid initial_grid(const ProblemSpec& spec) {
    switch (spec.init) {
    case InitKind::Zeros:
        return FieldGrid(spec.shape);
    case InitKind::Delta: {
        FieldGrid g(spec.shape);
        g.data[0] = 1.0;
        return g;
    }
    case InitKind::Random: {
        FieldGrid g(spec.shape);
        std::uint64_t state = spec.seed;
        for (Index i = 0; i < spec.shape.values(); ++i) {
            const double u = static_cast<double>(splitmix64_next(state) >> 11) *
                             0x1.0p-53; // [0, 1)
            g.data[i] = 2.0 * u - 1.0;
        }
        return g;
    }
    case InitKind::File: {
        FieldGrid g = read_grid(spec.init_file);
        if (g.shape != spec.shape)
            throw SpecError("init file '" + spec.init_file +
                            "' does not match the spec shape");
        return g;
    }
    }
    throw SpecError("initial_grid: unreachable");
}

} // namespace fftstencil
