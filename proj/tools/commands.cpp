#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "vrellipse/dynamics.hpp"
#include "vrellipse/errors.hpp"
#include "vrellipse/oracle.hpp"
#include "vrellipse/sampler.hpp"
#include "vrellipse/serialization.hpp"

namespace vrellipse::cli {

namespace {

std::string real(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Output {
    std::string format = "json";
    std::string path;
};

void add_output(CLI::App* cmd, Output& o, bool csv)
{
    if (csv) {
        cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    }
    cmd->add_option("-o,--output", o.path, "write to a file instead of stdout");
}

void emit(const Output& o, const std::string& text, std::ostream& out)
{
    if (o.path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.path);
    if (!(file << text)) {
        throw ParameterError("cannot write " + o.path);
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json(const std::string& path)
{
    std::ifstream file(path);
    if (!file) {
        throw ParameterError("cannot open " + path);
    }
    const std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        throw ParameterError(path + " is empty");
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParameterError(path + ": " + e.what());
    }
}

/// A graph file, or a point set together with a scale.
struct Input {
    std::string path;
    double r = 0.0;
    std::string convention = "<";

    std::optional<PointSet> points;

    CyclicGraph load()
    {
        const json j = read_json(path);
        if (j.contains("out_degree")) {
            return graph_from_json(j);
        }
        points = points_from_json(j);
        if (!(r > 0.0)) {
            throw ParameterError("a point set needs --r > 0");
        }
        return vr_graph(EllipseModel(points->a), points->points, r, parse_convention(convention));
    }
};

void add_input(CLI::App* cmd, Input& in)
{
    cmd->add_option("input", in.path, "graph or point-set JSON")->required();
    cmd->add_option("--r", in.r, "scale, for point sets");
    cmd->add_option("--convention", in.convention, "< or <=");
}

json summary(const CyclicGraph& g)
{
    json j;
    j["wf"] = winding_fraction(g).str();
    j.update(to_json(homotopy_type(g)));
    return j;
}

int classify(Input& in, const Output& o, std::ostream& out)
{
    const CyclicGraph g = in.load();
    json j = summary(g);
    j["n"] = g.size();
    j["orbits"] = to_json(periodic_orbits(g));
    emit(o, dump(j), out);
    return kSuccess;
}

int dismantle_cmd(Input& in, const Output& o, std::ostream& out)
{
    const CyclicGraph g = in.load();
    const DismantleResult d = dismantle(g);
    json j = summary(g);
    j["core"] = to_json(d.core);
    j["core_vertices"] = d.core_vertices;
    j["rounds"] = d.rounds;
    emit(o, dump(j), out);
    return kSuccess;
}

int dynamics(Input& in, const Output& o, std::ostream& out)
{
    const CyclicGraph g = in.load();
    json j = to_json(periodic_orbits(g));
    j["wf"] = winding_fraction(g).str();
    json classes = json::array();
    for (const VertexClass c : classify_vertices(g)) {
        classes.push_back(to_string(c));
    }
    j["classes"] = classes;
    std::vector<std::size_t> f(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        f[v] = step(g, v);
    }
    j["step"] = f;
    emit(o, dump(j), out);
    return kSuccess;
}

json point_json(const EllipsePoint& p) { return {{"t", p.t()}, {"x", p.x()}, {"y", p.y()}}; }

struct GeometryArgs {
    double a = 1.2;
    std::optional<double> r;
    std::optional<double> at;
    std::optional<double> triangle_at;
    std::size_t grid = 0;
};

int geometry(const GeometryArgs& args, const Output& o, std::ostream& out)
{
    const EllipseModel m(args.a);
    if (o.format == "csv") {
        if (args.grid == 0) {
            throw ParameterError("csv output needs --grid N");
        }
        std::ostringstream csv;
        csv << "t,x,y,s\n";
        for (std::size_t i = 0; i < args.grid; ++i) {
            const EllipsePoint p = m.at(kTwoPi * static_cast<double>(i) / static_cast<double>(args.grid));
            csv << real(p.t()) << ',' << real(p.x()) << ',' << real(p.y()) << ',' << real(triangle_side(m, p)) << '\n';
        }
        emit(o, csv.str(), out);
        return kSuccess;
    }
    const CriticalRadii radii = critical_radii(m);
    json j{{"a", m.a()}, {"r1", radii.r1}, {"r2", radii.r2}};
    if (!m.is_circle()) {
        json extrema = json::array();
        for (const Extremum& e : side_extrema(m)) {
            json p = point_json(e.point);
            p["s"] = triangle_side(m, e.point);
            p["kind"] = e.minimum ? "min" : "max";
            extrema.push_back(p);
        }
        j["extrema"] = extrema;
    }
    if (args.r) {
        if (!(*args.r > 0.0 && *args.r < 2.0)) {
            throw ParameterError("--r must lie in (0, 2)");
        }
        j["r"] = *args.r;
        if (!m.is_circle() && *args.r > radii.r1 && *args.r < radii.r2) {
            json z = json::array();
            for (const EllipsePoint& p : z_points(m, *args.r)) {
                z.push_back(point_json(p));
            }
            j["z_points"] = z;
        }
    }
    if (args.at) {
        const EllipsePoint p = m.at(*args.at);
        json block{{"p", point_json(p)},
                   {"h", point_json(antipodal_normal(m, p))},
                   {"h_inverse", point_json(inverse_antipodal_normal(m, p))},
                   {"s", triangle_side(m, p)}};
        if (args.r) {
            block["g_r"] = point_json(advance(m, p, *args.r));
            block["class"] = to_string(point_class(m, *args.r, p));
        }
        j["at"] = block;
    }
    if (args.triangle_at) {
        const TriangleCertificate tri = inscribed_triangle(m, m.at(*args.triangle_at));
        json vertices = json::array();
        for (const EllipsePoint& p : tri.vertices) {
            vertices.push_back(point_json(p));
        }
        j["triangle"] = {{"vertices", vertices}, {"side", tri.side}};
    }
    emit(o, dump(j), out);
    return kSuccess;
}

struct SampleArgs {
    double a = 1.2;
    std::optional<double> r;
    double epsilon = 0.05;
    std::size_t k = 2;
    std::vector<std::size_t> split;
    std::uint64_t seed = 0;
    std::size_t uniform = 0;
    double jitter = 0.25;
};

double middle_scale(const EllipseModel& m)
{
    const CriticalRadii radii = critical_radii(m);
    return 0.5 * (radii.r1 + radii.r2);
}

SamplerSpec sampler_spec(const SampleArgs& args)
{
    SamplerSpec spec;
    spec.a = args.a;
    spec.r = args.r ? *args.r : middle_scale(EllipseModel(args.a));
    spec.epsilon = args.epsilon;
    spec.k = args.k;
    if (args.split.empty()) {
        spec.n_first = args.k - args.k / 2;
        spec.n_second = args.k / 2;
    } else if (args.split.size() == 2) {
        spec.n_first = args.split[0];
        spec.n_second = args.split[1];
    } else {
        throw ParameterError("--split takes two counts n,n'");
    }
    spec.seed = args.seed;
    return spec;
}

int sample(const SampleArgs& args, const Output& o, std::ostream& out)
{
    const EllipseModel m(args.a);
    std::vector<EllipsePoint> points;
    json report;
    if (args.uniform > 0) {
        const UniformSample s = uniform_sample(m, args.uniform, args.seed, args.jitter);
        points = s.points;
        report = {{"kind", "uniform"}, {"epsilon_achieved", s.epsilon_achieved}, {"seed", args.seed}};
    } else {
        const SamplerSpec spec = sampler_spec(args);
        const AdversarialSample s = adversarial_sample(spec);
        points = s.points;
        report = {{"kind", "adversarial"},
                  {"r", spec.r},
                  {"epsilon", spec.epsilon},
                  {"epsilon_achieved", s.epsilon_achieved},
                  {"k", spec.k},
                  {"split", {spec.n_first, spec.n_second}},
                  {"seed", spec.seed},
                  {"orbit_count", s.orbit_count},
                  {"type", to_json(s.type)},
                  {"seeded_orbits", s.seeded_orbits},
                  {"chain_points", s.chain_points},
                  {"uniform_delta", s.uniform_delta}};
    }
    if (o.format == "csv") {
        emit(o, points_csv(points), out);
        return kSuccess;
    }
    json j = points_to_json(m, points);
    j["report"] = report;
    emit(o, dump(j), out);
    return kSuccess;
}

struct BarcodeArgs {
    bool ellipse = false;
    double a = 1.2;
    std::string input;
    std::string convention = "<";
    std::size_t max_dim = 2;
    std::size_t cap = kDefaultBarcodeCap;
};

int barcode(const BarcodeArgs& args, const Output& o, std::ostream& out)
{
    const Convention c = parse_convention(args.convention);
    Barcode b;
    if (args.ellipse) {
        b = ellipse_barcode(EllipseModel(args.a), c);
    } else {
        if (args.input.empty()) {
            throw ParameterError("barcode needs --ellipse or a point-set input");
        }
        const PointSet set = points_from_json(read_json(args.input));
        b = sample_barcode(EllipseModel(set.a), set.points, c, args.max_dim, args.cap);
    }
    emit(o, o.format == "csv" ? barcode_csv(b) : dump(to_json(b)), out);
    return kSuccess;
}

struct SweepArgs {
    double a = 1.2;
    std::vector<double> grid;
    std::string from;
    std::string to;
    std::size_t steps = 0;
    std::string convention = "<";
    std::string input;
    std::size_t n_points = 0;
    double jitter = 0.25;
    bool adversarial = false;
    SampleArgs adv;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
};

/// A number, or r1 / r2 of the ellipse.
double scale_value(const EllipseModel& m, const std::string& text)
{
    if (text == "r1") {
        return critical_radii(m).r1;
    }
    if (text == "r2") {
        return critical_radii(m).r2;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) {
        throw ParameterError("not a scale: '" + text + "'");
    }
    return v;
}

std::size_t thread_count(std::size_t flag)
{
    if (flag > 0) {
        return flag;
    }
    if (const char* env = std::getenv("VRELLIPSE_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1) {
            throw ParameterError(std::string("VRELLIPSE_THREADS must be a positive integer, got '") + env + "'");
        }
        return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs job(i) for every i on up to `threads` workers. The first failure by
/// index is rethrown.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& job)
{
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(threads, count); ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

int sweep(SweepArgs& args, const Output& o, std::ostream& out)
{
    EllipseModel m(args.a);
    std::vector<double> grid = args.grid;
    if (grid.empty()) {
        if (args.from.empty() || args.to.empty() || args.steps < 1) {
            throw ParameterError("sweep needs --grid or --from, --to and --steps");
        }
        const double lo = scale_value(m, args.from);
        const double hi = scale_value(m, args.to);
        for (std::size_t i = 0; i < args.steps; ++i) {
            const double frac = args.steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(args.steps - 1);
            grid.push_back(lo + (hi - lo) * frac);
        }
    }
    for (const double r : grid) {
        if (!(r > 0.0 && r < 2.0)) {
            throw ParameterError("grid point " + real(r) + " outside (0, 2)");
        }
    }
    const Convention c = parse_convention(args.convention);

    std::vector<EllipsePoint> points;
    if (!args.input.empty()) {
        PointSet set = points_from_json(read_json(args.input));
        m = EllipseModel(set.a);
        points = std::move(set.points);
    } else if (args.adversarial) {
        args.adv.a = args.a;
        args.adv.seed = args.seed;
        points = adversarial_sample(sampler_spec(args.adv)).points;
    } else if (args.n_points > 0) {
        points = uniform_sample(m, args.n_points, args.seed, args.jitter).points;
    } else {
        throw ParameterError("sweep needs a sample: --input, --n-points or --adversarial");
    }

    std::vector<std::string> rows(grid.size());
    parallel_for(grid.size(), thread_count(args.threads), [&](std::size_t i) {
        const SampleClassification cls = classify_sample(m, points, grid[i], c);
        rows[i] = std::to_string(i) + ',' + real(grid[i]) + ',' + cls.wf.str() + ',' + cls.type.str() + ',' +
                  std::to_string(cls.orbits.count) + '\n';
    });
    std::string csv = "index,r,wf,type,orbits\n";
    for (const auto& row : rows) {
        csv += row;
    }
    emit(o, csv, out);
    return kSuccess;
}

struct OracleArgs {
    Input in;
    std::size_t max_dim = 2;
    std::size_t cap = kDefaultSimplexCap;
};

int oracle(OracleArgs& args, const Output& o, std::ostream& out)
{
    const json j = read_json(args.in.path);
    json result;
    if (!j.contains("out_degree") && args.in.r == 0.0) {
        // No scale: the full Rips filtration of the point set.
        const PointSet set = points_from_json(j);
        const FilteredComplex fc = rips_filtration(distance_matrix(set.points), args.max_dim + 1,
                                                   std::numeric_limits<double>::infinity(), args.cap);
        json pairs = json::array();
        for (const PersistencePair& p : persistent_pairs(fc, args.max_dim)) {
            pairs.push_back({{"dim", p.dim}, {"birth", p.birth}, {"death", p.essential() ? json(nullptr) : json(p.death)}});
        }
        result["pairs"] = pairs;
        result["betti"] = betti_numbers(fc, args.max_dim);
    } else {
        const CyclicGraph g = args.in.load();
        const FilteredComplex fc = clique_complex(undirected_adjacency(g), args.max_dim + 1, args.cap);
        result["betti"] = betti_numbers(fc, args.max_dim);
        result["simplices"] = fc.size();
    }
    emit(o, dump(result), out);
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Vietoris-Rips complexes of ellipses"};
    app.name("vrellipse");
    app.require_subcommand(1, 1);
    std::function<int()> action;

    Output o;
    Input in;
    auto* cmd = app.add_subcommand("classify", "homotopy type, winding fraction and orbits of a graph or sample");
    add_input(cmd, in);
    add_output(cmd, o, false);
    cmd->callback([&] { action = [&] { return classify(in, o, out); }; });

    cmd = app.add_subcommand("dismantle", "core and removal rounds of a graph or sample");
    add_input(cmd, in);
    add_output(cmd, o, false);
    cmd->callback([&] { action = [&] { return dismantle_cmd(in, o, out); }; });

    cmd = app.add_subcommand("dynamics", "periodic orbits and fast/slow vertices");
    add_input(cmd, in);
    add_output(cmd, o, false);
    cmd->callback([&] { action = [&] { return dynamics(in, o, out); }; });

    GeometryArgs geo;
    cmd = app.add_subcommand("geometry", "critical radii, extrema, z-points and inscribed triangles");
    cmd->add_option("--a", geo.a, "semi-major axis in [1, sqrt 2]");
    cmd->add_option("--r", geo.r, "scale for z-points and g_r");
    cmd->add_option("--at", geo.at, "parameter of a point to report h, h^-1, s and g_r at");
    cmd->add_option("--triangle-at", geo.triangle_at, "parameter of the first triangle vertex");
    cmd->add_option("--grid", geo.grid, "rows of the s(t) table (csv)");
    add_output(cmd, o, true);
    cmd->callback([&] { action = [&] { return geometry(geo, o, out); }; });

    SampleArgs smp;
    cmd = app.add_subcommand("sample", "adversarial or uniform sample of the ellipse");
    cmd->add_option("--a", smp.a, "semi-major axis");
    cmd->add_option("--r", smp.r, "scale in (r1, r2); defaults to the midpoint");
    cmd->add_option("--epsilon", smp.epsilon, "density");
    cmd->add_option("--k", smp.k, "number of orbits");
    cmd->add_option("--split", smp.split, "orbits in the first and second fast arc")->delimiter(',');
    cmd->add_option("--seed", smp.seed);
    cmd->add_option("--uniform", smp.uniform, "n jittered equally spaced points instead");
    cmd->add_option("--jitter", smp.jitter);
    add_output(cmd, o, true);
    cmd->callback([&] { action = [&] { return sample(smp, o, out); }; });

    BarcodeArgs bar;
    cmd = app.add_subcommand("barcode", "persistence of the ellipse or of a sample");
    cmd->add_flag("--ellipse", bar.ellipse, "closed form for the whole ellipse");
    cmd->add_option("--a", bar.a);
    cmd->add_option("input", bar.input, "point-set JSON");
    cmd->add_option("--convention", bar.convention, "< or <=");
    cmd->add_option("--max-dim", bar.max_dim);
    cmd->add_option("--cap", bar.cap, "largest sample size");
    add_output(cmd, o, true);
    cmd->callback([&] { action = [&] { return barcode(bar, o, out); }; });

    SweepArgs sw;
    cmd = app.add_subcommand("sweep", "classify one sample over a grid of scales (csv)");
    cmd->add_option("--a", sw.a);
    cmd->add_option("--grid", sw.grid, "explicit scales")->delimiter(',');
    cmd->add_option("--from", sw.from, "first scale, a number or r1/r2");
    cmd->add_option("--to", sw.to, "last scale, a number or r1/r2");
    cmd->add_option("--steps", sw.steps);
    cmd->add_option("--convention", sw.convention, "< or <=");
    cmd->add_option("--input", sw.input, "point-set JSON");
    cmd->add_option("--n-points", sw.n_points, "uniform sample size");
    cmd->add_option("--jitter", sw.jitter);
    cmd->add_flag("--adversarial", sw.adversarial);
    cmd->add_option("--epsilon", sw.adv.epsilon);
    cmd->add_option("--k", sw.adv.k);
    cmd->add_option("--split", sw.adv.split)->delimiter(',');
    cmd->add_option("--sample-r", sw.adv.r, "scale the adversarial sample is built for");
    cmd->add_option("--seed", sw.seed);
    cmd->add_option("--threads", sw.threads, "workers; default from VRELLIPSE_THREADS");
    add_output(cmd, o, false);
    cmd->callback([&] { action = [&] { return sweep(sw, o, out); }; });

    OracleArgs orc;
    cmd = app.add_subcommand("oracle", "Betti numbers or persistence pairs by matrix reduction");
    add_input(cmd, orc.in);
    cmd->add_option("--max-dim", orc.max_dim)->check(CLI::Range(0, 3));
    cmd->add_option("--cap", orc.cap, "simplex limit");
    add_output(cmd, o, false);
    cmd->callback([&] { action = [&] { return oracle(orc, o, out); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsage;
    }
    try {
        return action();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const json::exception& e) {
        err << "error: malformed input: " << e.what() << '\n';
        return kUsage;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace vrellipse::cli
