#pragma once

// Command line front end. run() is separate from main() so tests can drive it
// with captured streams.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tbasis/tbasis.hpp"

#ifndef TBASIS_SPECS_DIR
#define TBASIS_SPECS_DIR "specs"
#endif

namespace tbasis::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_validation = 2;
inline constexpr int exit_numerical = 3;

/// Largest reconstruction error `gallery` accepts.
inline constexpr double gallery_tolerance = 1e-8;

struct Options {
    std::string spec;
    std::vector<int> order;
    std::vector<int> derivative;
    std::string alpha;
    std::string kind = "trig";
    std::string out;
    std::string format;
    int samples = 200;
    int max_elevations = 32;
    std::string split_at;
    int by = 1;
    std::string specs_dir = TBASIS_SPECS_DIR;
};

namespace detail {

inline std::string read_file(const std::string& path, const std::string& flag) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw validation_error(flag + ": cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) {
        throw validation_error("--out: cannot write '" + path + "'");
    }
}

inline SpecDocument load_spec(const std::string& path) {
    if (path.empty()) {
        throw validation_error("--spec: a spec file is required");
    }
    const std::string text = read_file(path, "--spec");
    try {
        return parse_spec(text);
    } catch (const validation_error& e) {
        throw validation_error(path + ": " + e.what());
    }
}

inline BasisKind parse_kind(const std::string& s) {
    if (s == "trig" || s == "trigonometric") return BasisKind::trigonometric;
    if (s == "hyp" || s == "hyperbolic") return BasisKind::hyperbolic;
    throw validation_error("--kind: expected trig or hyperbolic, got '" + s + "'");
}

inline Angle flag_angle(const std::string& text, const std::string& flag) {
    if (text.empty()) {
        throw validation_error(flag + ": a value is required");
    }
    try {
        return parse_angle(text);
    } catch (const validation_error& e) {
        throw validation_error(flag + ": " + e.what());
    }
}

inline int curve_order(const Options& o, const CurveSpec& spec) {
    if (o.order.empty()) return min_order(spec);
    if (o.order.size() != 1) throw validation_error("--order: curves take a single order");
    if (o.order[0] < 1 || o.order[0] > max_order) {
        throw validation_error("--order: " + std::to_string(o.order[0]) + " outside [1, " + std::to_string(max_order) + "]");
    }
    if (o.order[0] < min_order(spec)) {
        throw validation_error("--order: " + std::to_string(o.order[0]) + " is below the minimal order " +
                               std::to_string(min_order(spec)));
    }
    return o.order[0];
}

inline std::vector<int> surface_orders(const Options& o, const SurfaceSpec& spec) {
    const auto needed = min_orders(spec);
    if (o.order.empty()) return needed;
    std::vector<int> orders = o.order;
    if (orders.size() == 1) orders.assign(spec.delta(), o.order[0]);
    if (orders.size() != spec.delta()) {
        throw validation_error("--order: expected 1 or " + std::to_string(spec.delta()) + " values");
    }
    for (std::size_t j = 0; j < orders.size(); ++j) {
        if (orders[j] < needed[j] || orders[j] > max_order) {
            throw validation_error("--order: component " + std::to_string(j + 1) + " = " + std::to_string(orders[j]) +
                                   " outside [" + std::to_string(needed[j]) + ", " + std::to_string(max_order) + "]");
        }
    }
    return orders;
}

inline int curve_derivative(const Options& o) {
    if (o.derivative.empty()) return 0;
    if (o.derivative.size() != 1 || o.derivative[0] < 0) {
        throw validation_error("--derivative: curves take one non-negative derivative order");
    }
    return o.derivative[0];
}

inline std::vector<int> surface_derivatives(const Options& o, std::size_t delta) {
    if (o.derivative.empty()) return std::vector<int>(delta, 0);
    std::vector<int> d = o.derivative;
    if (d.size() == 1) d.assign(delta, o.derivative[0]);
    if (d.size() != delta) throw validation_error("--derivative: expected 1 or " + std::to_string(delta) + " values");
    for (int x : d) {
        if (x < 0) throw validation_error("--derivative: orders must be non-negative");
    }
    return d;
}

inline void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed) {
        if (format == a) return;
    }
    std::string list;
    for (const char* a : allowed) list += (list.empty() ? "" : "|") + std::string(a);
    throw validation_error("--format: '" + format + "' not supported here (use " + list + ")");
}

/// The control point curve a spec describes at order n (projected and
/// weighted for rational specs).
inline ControlCurve describe_curve(const SpecDocument& doc, int n, int max_elevations) {
    if (doc.rational) return exact_rational_curve(doc.curve(), n, max_elevations).curve();
    return exact_curve(doc.curve(), n, 0);
}

inline ControlGrid describe_surface(const SpecDocument& doc, const std::vector<int>& orders, int max_elevations) {
    if (doc.rational) return exact_rational_surface(doc.surface(), orders, max_elevations).grid;
    return exact_surface(doc.surface(), orders);
}

inline std::vector<Point> sample_curve(const ControlCurve& c, int samples) {
    std::vector<Point> pts;
    for (int j = 0; j < samples; ++j) {
        pts.push_back(evaluate(c, c.space.alpha() * static_cast<double>(j) / (samples - 1)));
    }
    return pts;
}

inline std::vector<BasisSpace> grid_spaces(const SurfaceSpec& spec, const ControlGrid& grid) {
    return direction_spaces(spec, grid.orders);
}

inline Lattice sample_lattice(const SurfaceSpec& spec, const ControlGrid& grid, int per_direction) {
    const GridEvaluator eval(grid, grid_spaces(spec, grid));
    Lattice l;
    const std::size_t delta = spec.delta();
    l.shape.assign(delta, static_cast<std::size_t>(per_direction));
    std::size_t total = 1;
    for (auto n : l.shape) total *= n;
    std::vector<double> u(delta);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t rest = k;
        for (std::size_t j = delta; j-- > 0;) {
            const auto i = rest % l.shape[j];
            rest /= l.shape[j];
            u[j] = eval.spaces()[j].alpha() * static_cast<double>(i) / (per_direction - 1);
        }
        l.points.push_back(eval(u));
    }
    return l;
}

inline Lattice net_lattice(const ControlGrid& grid) {
    Lattice l;
    l.shape = grid.shape();
    for (std::size_t k = 0; k < grid.count(); ++k) l.points.push_back(grid.point(k));
    return l;
}

inline void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.out.empty()) {
        out << text;
    } else {
        write_file(o.out, text);
    }
}

inline void check_samples(int samples) {
    if (samples < 2) throw validation_error("--samples: need at least 2, got " + std::to_string(samples));
}

// ------------------------------------------------------------ commands

inline void cmd_basis(const Options& o, std::ostream& out) {
    const std::string format = o.format.empty() ? "csv" : o.format;
    require_format(format, {"csv", "json"});
    check_samples(o.samples);
    if (o.order.size() != 1) throw validation_error("--order: basis takes a single order");
    const BasisSpace space(parse_kind(o.kind), o.order[0], flag_angle(o.alpha, "--alpha"));
    Table t;
    t.columns.push_back("u");
    for (int i = 0; i <= space.degree(); ++i) t.columns.push_back("T" + std::to_string(i));
    for (int j = 0; j < o.samples; ++j) {
        const double u = space.alpha() * static_cast<double>(j) / (o.samples - 1);
        std::vector<double> row{u};
        const auto b = basis_vector(space, u);
        row.insert(row.end(), b.begin(), b.end());
        t.rows.push_back(std::move(row));
    }
    emit(o, out, export_table(t, format));
}

inline void cmd_xform(const Options& o, std::ostream& out) {
    const std::string format = o.format.empty() ? "csv" : o.format;
    require_format(format, {"csv", "json"});
    if (o.order.size() != 1) throw validation_error("--order: xform takes a single order");
    const BasisSpace space(parse_kind(o.kind), o.order[0], flag_angle(o.alpha, "--alpha"));
    emit(o, out, export_table(matrix_table(*transform_matrix(space)), format));
}

inline void cmd_describe(const Options& o, std::ostream& out) {
    const auto doc = load_spec(o.spec);
    const std::string format = o.format.empty() ? "csv" : o.format;
    require_format(format, {"csv", "json"});
    if (doc.rational && !o.derivative.empty() &&
        std::any_of(o.derivative.begin(), o.derivative.end(), [](int r) { return r != 0; })) {
        throw validation_error("--derivative: derivatives of rational specs are not supported");
    }
    if (doc.is_curve()) {
        const int n = curve_order(o, doc.curve());
        if (doc.rational) {
            const auto r = exact_rational_curve(doc.curve(), n, o.max_elevations);
            emit(o, out, export_table(points_table(r.projected_points, r.weights), format));
        } else {
            const auto c = exact_curve(doc.curve(), n, curve_derivative(o));
            emit(o, out, export_table(points_table(c.points, std::nullopt), format));
        }
        return;
    }
    const auto orders = surface_orders(o, doc.surface());
    const ControlGrid grid = doc.rational ? exact_rational_surface(doc.surface(), orders, o.max_elevations).grid
                                          : exact_surface(doc.surface(), orders,
                                                          surface_derivatives(o, doc.surface().delta()));
    emit(o, out, export_table(grid_table(grid), format));
}

inline void cmd_describe_rational(const Options& o, std::ostream& out, std::ostream& err) {
    const auto doc = load_spec(o.spec);
    if (!doc.rational) throw validation_error(o.spec + ": spec is not rational");
    const std::string format = o.format.empty() ? "json" : o.format;
    require_format(format, {"csv", "json"});
    Table t;
    json info;
    if (doc.is_curve()) {
        const auto r = exact_rational_curve(doc.curve(), curve_order(o, doc.curve()), o.max_elevations);
        t = points_table(r.projected_points, r.weights);
        const std::size_t dim = r.preimage_points.front().size();
        for (std::size_t c = 0; c < dim; ++c) t.columns.push_back("p" + std::to_string(c + 1));
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            t.rows[i].insert(t.rows[i].end(), r.preimage_points[i].begin(), r.preimage_points[i].end());
        }
        info = {{"order_used", r.order_used}, {"elevations_performed", r.elevations_performed}};
    } else {
        const auto r = exact_rational_surface(doc.surface(), surface_orders(o, doc.surface()), o.max_elevations);
        t = grid_table(r.grid);
        for (std::size_t c = 0; c < r.preimage.dimension; ++c) t.columns.push_back("p" + std::to_string(c + 1));
        for (std::size_t k = 0; k < t.rows.size(); ++k) {
            const auto p = r.preimage.point(k);
            t.rows[k].insert(t.rows[k].end(), p.begin(), p.end());
        }
        info = {{"orders_used", r.grid.orders}, {"elevations_performed", r.elevations_performed}};
    }
    if (format == "json") {
        info["table"] = to_json(t);
        emit(o, out, info.dump(2) + "\n");
    } else {
        err << "bookkeeping: " << info.dump() << "\n";
        emit(o, out, to_csv(t));
    }
}

inline json piece_json(const SubdivisionPiece& p) {
    return {{"u_begin", p.u_begin}, {"u_end", p.u_end}, {"table", to_json(points_table(p.points, p.weights))}};
}

inline void cmd_subdivide(const Options& o, std::ostream& out) {
    const auto doc = load_spec(o.spec);
    if (!doc.is_curve()) throw validation_error(o.spec + ": subdivision is implemented for curves only");
    const std::string format = o.format.empty() ? "json" : o.format;
    require_format(format, {"csv", "json", "svg"});
    const ControlCurve curve = describe_curve(doc, curve_order(o, doc.curve()), o.max_elevations);
    const double u0 = flag_angle(o.split_at, "--split-at").radians();
    if (!(u0 > 0.0 && u0 < curve.space.alpha())) {
        throw validation_error("--split-at: " + std::to_string(u0) + " must lie strictly inside (0, " +
                               std::to_string(curve.space.alpha()) + ")");
    }
    const auto res = subdivide(curve, u0);
    if (format == "json") {
        json j{{"split_ratio", res.split_ratio}, {"left", piece_json(res.left)}, {"right", piece_json(res.right)}};
        emit(o, out, j.dump(2) + "\n");
    } else if (format == "csv") {
        Table t = points_table(res.left.points, res.left.weights);
        t.columns.insert(t.columns.begin(), "piece");
        for (auto& row : t.rows) row.insert(row.begin(), 0.0);
        const Table r = points_table(res.right.points, res.right.weights);
        for (auto row : r.rows) {
            row.insert(row.begin(), 1.0);
            t.rows.push_back(std::move(row));
        }
        emit(o, out, to_csv(t));
    } else {
        check_samples(o.samples);
        emit(o, out, export_svg({{sample_curve(curve, o.samples)}, {res.left.points, res.right.points}}));
    }
}

inline void cmd_elevate(const Options& o, std::ostream& out) {
    const auto doc = load_spec(o.spec);
    if (!doc.is_curve()) throw validation_error(o.spec + ": elevation is implemented for curves only");
    if (o.by < 1) throw validation_error("--by: must be at least 1, got " + std::to_string(o.by));
    const std::string format = o.format.empty() ? "csv" : o.format;
    require_format(format, {"csv", "json", "svg"});
    const ControlCurve curve = describe_curve(doc, curve_order(o, doc.curve()), o.max_elevations);
    if (curve.space.order() + o.by > max_order) {
        throw validation_error("--by: order " + std::to_string(curve.space.order() + o.by) + " exceeds " +
                               std::to_string(max_order));
    }
    const ControlCurve elevated = elevate(curve, o.by);
    if (format == "svg") {
        check_samples(o.samples);
        emit(o, out, export_svg({{sample_curve(curve, o.samples)}, {curve.points, elevated.points}}));
    } else {
        emit(o, out, export_table(points_table(elevated.points, elevated.weights), format));
    }
}

inline void cmd_sample(const Options& o, std::ostream& out) {
    const auto doc = load_spec(o.spec);
    check_samples(o.samples);
    if (doc.is_curve()) {
        const std::string format = o.format.empty() ? "csv" : o.format;
        require_format(format, {"csv", "json", "svg", "obj"});
        const ControlCurve curve = describe_curve(doc, curve_order(o, doc.curve()), o.max_elevations);
        const auto pts = sample_curve(curve, o.samples);
        if (format == "svg") {
            emit(o, out, export_svg({{pts}, {curve.points}}));
        } else if (format == "obj") {
            emit(o, out, export_obj({{}, {}, {pts, curve.points}}));
        } else {
            Table t = points_table(pts, std::nullopt);
            t.columns.insert(t.columns.begin(), "u");
            for (std::size_t j = 0; j < t.rows.size(); ++j) {
                t.rows[j].insert(t.rows[j].begin(), curve.space.alpha() * static_cast<double>(j) / (o.samples - 1));
            }
            emit(o, out, export_table(t, format));
        }
        return;
    }
    const std::string format = o.format.empty() ? "csv" : o.format;
    require_format(format, {"csv", "json", "obj"});
    const ControlGrid grid = describe_surface(doc, surface_orders(o, doc.surface()), o.max_elevations);
    const Lattice lattice = sample_lattice(doc.surface(), grid, o.samples);
    if (format == "obj") {
        emit(o, out, export_obj({{lattice}, {net_lattice(grid)}, {}}));
        return;
    }
    Table t = points_table(lattice.points, std::nullopt);
    const std::size_t delta = lattice.shape.size();
    const auto spaces = grid_spaces(doc.surface(), grid);
    for (std::size_t j = delta; j-- > 0;) t.columns.insert(t.columns.begin(), "u" + std::to_string(j + 1));
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        std::size_t rest = k;
        std::vector<double> u(delta);
        for (std::size_t j = delta; j-- > 0;) {
            u[j] = spaces[j].alpha() * static_cast<double>(rest % lattice.shape[j]) / (o.samples - 1);
            rest /= lattice.shape[j];
        }
        t.rows[k].insert(t.rows[k].begin(), u.begin(), u.end());
    }
    emit(o, out, export_table(t, format));
}

inline std::string order_label(const std::vector<int>& order) {
    std::string s;
    for (std::size_t j = 0; j < order.size(); ++j) s += (j ? "x" : "") + std::to_string(order[j]);
    return s;
}

inline int cmd_gallery(const Options& o, std::ostream& out) {
    namespace fs = std::filesystem;
    if (o.out.empty()) throw validation_error("--out: gallery needs an output directory");
    std::error_code ec;
    if (!fs::is_directory(o.specs_dir, ec)) {
        throw validation_error("--specs: '" + o.specs_dir + "' is not a directory");
    }
    fs::create_directories(o.out, ec);
    if (ec) throw validation_error("--out: cannot create '" + o.out + "'");

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(o.specs_dir)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw validation_error("--specs: no .json specs in '" + o.specs_dir + "'");

    json manifest = json::array();
    bool ok = true;
    for (const auto& file : files) {
        const auto doc = load_spec(file.string());
        const std::string id = file.stem().string();
        double worst = 0.0;
        std::string output;
        std::vector<std::string> labels;
        if (doc.is_curve()) {
            std::vector<int> orders;
            for (const auto& ord : doc.orders) orders.push_back(ord[0]);
            if (orders.empty()) orders.push_back(min_order(doc.curve()));
            std::vector<Point> samples;
            std::vector<std::vector<Point>> polygons;
            for (int n : orders) {
                const ControlCurve c = describe_curve(doc, n, o.max_elevations);
                worst = std::max(worst, curve_error(doc.curve(), c, doc.rational, 1001));
                if (samples.empty()) samples = sample_curve(c, 400);
                polygons.push_back(c.points);
                labels.push_back(std::to_string(n));
            }
            if (samples.front().size() == 2) {
                output = id + ".svg";
                write_file((fs::path(o.out) / output).string(), export_svg({{samples}, polygons}));
            } else {
                output = id + ".obj";
                polygons.insert(polygons.begin(), samples);
                write_file((fs::path(o.out) / output).string(), export_obj({{}, {}, polygons}));
            }
        } else {
            const auto& spec = doc.surface();
            auto orders = doc.orders;
            if (orders.empty()) orders.push_back(min_orders(spec));
            const int lattice = spec.delta() >= 3 ? 17 : 33;
            ObjScene scene;
            for (const auto& ord : orders) {
                const ControlGrid grid = describe_surface(doc, ord, o.max_elevations);
                worst = std::max(worst, surface_error(spec, grid, doc.rational, lattice));
                if (scene.patches.empty()) scene.patches.push_back(sample_lattice(spec, grid, lattice));
                scene.nets.push_back(net_lattice(grid));
                labels.push_back(order_label(grid.orders));
            }
            output = id + ".obj";
            write_file((fs::path(o.out) / output).string(), export_obj(scene));
        }
        const bool pass = worst <= gallery_tolerance;
        ok = ok && pass;
        char line[256];
        std::string order_list;
        for (const auto& l : labels) order_list += (order_list.empty() ? "" : ",") + l;
        std::snprintf(line, sizeof line, "%-26s orders %-12s max error %.3e  %s  %s\n", id.c_str(), order_list.c_str(),
                      worst, pass ? "ok  " : "FAIL", output.c_str());
        out << line;
        manifest.push_back({{"id", id},
                            {"spec", file.filename().string()},
                            {"output", output},
                            {"orders", labels},
                            {"max_error", worst}});
    }
    write_file((fs::path(o.out) / "manifest.json").string(), json{{"figures", manifest}}.dump(2) + "\n");
    out << files.size() << " artifacts written to " << o.out << "\n";
    return ok ? exit_ok : exit_numerical;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    Options o;
    CLI::App app{"Exact B-basis descriptions of trigonometric and hyperbolic curves and surfaces"};
    app.name("tbasis");
    app.require_subcommand(1);

    auto add_spec = [&](CLI::App* c) { c->add_option("--spec", o.spec, "JSON spec file"); };
    auto add_order = [&](CLI::App* c) {
        c->add_option("--order", o.order, "order n, or n1,n2,... for surfaces")->delimiter(',');
    };
    auto add_space = [&](CLI::App* c) {
        c->add_option("--alpha", o.alpha, "shape parameter: radians or a multiple of pi such as 2pi/3");
        c->add_option("--kind", o.kind, "trig or hyperbolic");
    };
    auto add_out = [&](CLI::App* c) {
        c->add_option("--out", o.out, "output file (default stdout)");
        c->add_option("--format", o.format, "svg, obj, csv or json");
    };
    auto add_elev = [&](CLI::App* c) {
        c->add_option("--max-elevations", o.max_elevations, "elevation budget for rational specs");
    };

    auto* basis = app.add_subcommand("basis", "sample the normalized B-basis functions");
    add_order(basis);
    add_space(basis);
    add_out(basis);
    basis->add_option("--samples", o.samples, "number of samples");

    auto* xform = app.add_subcommand("xform", "basis transformation matrix");
    add_order(xform);
    add_space(xform);
    add_out(xform);

    auto* describe = app.add_subcommand("describe", "control points of a spec");
    add_spec(describe);
    add_order(describe);
    describe->add_option("--derivative", o.derivative, "derivative order(s)")->delimiter(',');
    add_out(describe);
    add_elev(describe);

    auto* describe_rational = app.add_subcommand("describe-rational", "pre-image, weights and bookkeeping");
    add_spec(describe_rational);
    add_order(describe_rational);
    add_out(describe_rational);
    add_elev(describe_rational);

    auto* subdivide_cmd = app.add_subcommand("subdivide", "split a curve at a parameter");
    add_spec(subdivide_cmd);
    add_order(subdivide_cmd);
    subdivide_cmd->add_option("--split-at", o.split_at, "split parameter u0")->required();
    subdivide_cmd->add_option("--samples", o.samples, "curve samples for svg");
    add_out(subdivide_cmd);
    add_elev(subdivide_cmd);

    auto* elevate_cmd = app.add_subcommand("elevate", "order elevation of a curve");
    add_spec(elevate_cmd);
    add_order(elevate_cmd);
    elevate_cmd->add_option("--by", o.by, "number of elevation steps");
    elevate_cmd->add_option("--samples", o.samples, "curve samples for svg");
    add_out(elevate_cmd);
    add_elev(elevate_cmd);

    auto* sample = app.add_subcommand("sample", "sample a curve or surface");
    add_spec(sample);
    add_order(sample);
    sample->add_option("--samples", o.samples, "samples (per direction)");
    add_out(sample);
    add_elev(sample);

    auto* gallery = app.add_subcommand("gallery", "regenerate every bundled figure spec");
    gallery->add_option("--out", o.out, "output directory")->required();
    gallery->add_option("--specs", o.specs_dir, "directory of spec files");
    add_elev(gallery);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_validation;
    }

    try {
        if (o.max_elevations < 0) {
            throw validation_error("--max-elevations: must be non-negative");
        }
        if (*basis) detail::cmd_basis(o, out);
        else if (*xform) detail::cmd_xform(o, out);
        else if (*describe) detail::cmd_describe(o, out);
        else if (*describe_rational) detail::cmd_describe_rational(o, out, err);
        else if (*subdivide_cmd) detail::cmd_subdivide(o, out);
        else if (*elevate_cmd) detail::cmd_elevate(o, out);
        else if (*sample) detail::cmd_sample(o, out);
        else if (*gallery) return detail::cmd_gallery(o, out);
        return exit_ok;
    } catch (const validation_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const positivity_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_numerical;
    } catch (const numerical_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_numerical;
    }
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace tbasis::cli
