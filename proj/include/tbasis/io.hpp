#pragma once

// JSON spec ingestion and geometry export (CSV / JSON tables, SVG, OBJ).
// Numbers are printed in the shortest form that reads back bit for bit.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "surface.hpp"

namespace tbasis {

using json = nlohmann::json;

inline constexpr int spec_version = 1;

/// A parsed spec file. `orders` lists the order (vectors) a figure is
/// rendered at; empty means the minimal order.
struct SpecDocument {
    std::string name;
    std::string description;
    bool rational = false;
    std::variant<CurveSpec, SurfaceSpec> spec;
    std::vector<std::vector<int>> orders;

    bool is_curve() const { return std::holds_alternative<CurveSpec>(spec); }
    const CurveSpec& curve() const { return std::get<CurveSpec>(spec); }
    const SurfaceSpec& surface() const { return std::get<SurfaceSpec>(spec); }
};

namespace detail {

class SpecReader {
public:
    explicit SpecReader(std::string path) : path_(std::move(path)) {}

    [[noreturn]] static void fail(const std::string& path, const std::string& message) {
        throw validation_error((path.empty() ? std::string("spec") : path) + ": " + message);
    }

    static std::string child(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

    static std::string item(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

    static void require_object(const json& j, const std::string& path, std::set<std::string> allowed) {
        if (!j.is_object()) {
            fail(path, "expected an object");
        }
        for (const auto& [key, value] : j.items()) {
            if (!allowed.count(key)) {
                fail(child(path, key), "unknown field");
            }
        }
    }

    static const json& field(const json& j, const std::string& path, const std::string& key) {
        if (!j.contains(key)) {
            fail(child(path, key), "missing required field");
        }
        return j.at(key);
    }

    static const json& array_field(const json& j, const std::string& path, const std::string& key) {
        const json& a = field(j, path, key);
        if (!a.is_array()) {
            fail(child(path, key), "expected an array");
        }
        return a;
    }

    static int integer(const json& j, const std::string& path) {
        if (!j.is_number_integer()) {
            fail(path, "expected an integer");
        }
        const auto v = j.get<std::int64_t>();
        if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
            fail(path, "integer out of range");
        }
        return static_cast<int>(v);
    }

    static double number(const json& j, const std::string& path) {
        if (!j.is_number()) {
            fail(path, "expected a number");
        }
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            fail(path, "number is not finite");
        }
        return v;
    }

    static Angle angle(const json& j, const std::string& path) {
        if (j.is_number()) {
            return Angle(number(j, path));
        }
        if (j.is_string()) {
            try {
                return parse_angle(j.get<std::string>());
            } catch (const validation_error& e) {
                fail(path, e.what());
            }
        }
        fail(path, "expected a number or an angle string such as \"2pi/3\"");
    }

    static BasisKind kind(const json& j, const std::string& path) {
        if (j.is_string()) {
            const auto s = j.get<std::string>();
            if (s == "trig" || s == "trigonometric") {
                return BasisKind::trigonometric;
            }
            if (s == "hyp" || s == "hyperbolic") {
                return BasisKind::hyperbolic;
            }
        }
        fail(path, "expected \"trig\" or \"hyperbolic\"");
    }

    static Family family(const json& j, const std::string& path) {
        if (j.is_string()) {
            const auto s = j.get<std::string>();
            if (s == "cos") return Family::cos;
            if (s == "sin") return Family::sin;
            if (s == "cosh") return Family::cosh;
            if (s == "sinh") return Family::sinh;
        }
        fail(path, "expected one of \"cos\", \"sin\", \"cosh\", \"sinh\"");
    }

    static CoordinateFunction function(const json& j, const std::string& path, BasisKind k) {
        require_object(j, path, {"terms"});
        const json& terms = array_field(j, path, "terms");
        CoordinateFunction f;
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const std::string tp = item(child(path, "terms"), t);
            const json& term = terms[t];
            require_object(term, tp, {"family", "k", "a", "phase"});
            Term out;
            out.family = family(field(term, tp, "family"), child(tp, "family"));
            if (kind_of(out.family) != k) {
                fail(child(tp, "family"), std::string("family '") + to_string(out.family) + "' does not match " +
                                              to_string(k) + " direction");
            }
            out.frequency = integer(field(term, tp, "k"), child(tp, "k"));
            if (out.frequency < 0) {
                fail(child(tp, "k"), "frequency must be non-negative");
            }
            if (out.frequency > max_order) {
                fail(child(tp, "k"), "frequency exceeds " + std::to_string(max_order));
            }
            out.amplitude = number(field(term, tp, "a"), child(tp, "a"));
            out.phase = term.contains("phase") ? angle(term.at("phase"), child(tp, "phase")) : Angle(0.0);
            f.terms.push_back(out);
        }
        return f;
    }

    static void check_space(BasisKind k, const Angle& alpha, const std::string& path) {
        try {
            validate_space(k, 1, alpha);
        } catch (const validation_error& e) {
            fail(path, e.what());
        }
    }

    SpecDocument read(const json& root) const {
        require_object(root, "", {"version", "type", "name", "description", "kind", "alpha", "directions", "kappa",
                                  "rational", "coords", "orders"});
        const int version = integer(field(root, "", "version"), "version");
        if (version != spec_version) {
            fail("version", "unsupported version " + std::to_string(version));
        }
        const json& type = field(root, "", "type");
        if (!type.is_string() || (type != "curve" && type != "surface")) {
            fail("type", "expected \"curve\" or \"surface\"");
        }
        SpecDocument doc;
        if (root.contains("name")) {
            if (!root.at("name").is_string()) fail("name", "expected a string");
            doc.name = root.at("name").get<std::string>();
        }
        if (root.contains("description")) {
            if (!root.at("description").is_string()) fail("description", "expected a string");
            doc.description = root.at("description").get<std::string>();
        }
        if (root.contains("rational")) {
            if (!root.at("rational").is_boolean()) fail("rational", "expected a boolean");
            doc.rational = root.at("rational").get<bool>();
        }

        const json& coords = array_field(root, "", "coords");
        if (coords.empty()) {
            fail("coords", "must not be empty");
        }

        if (type == "curve") {
            for (const char* k : {"directions", "kappa"}) {
                if (root.contains(k)) fail(k, "not allowed for curves");
            }
            CurveSpec spec;
            spec.kind = kind(field(root, "", "kind"), "kind");
            spec.alpha = angle(field(root, "", "alpha"), "alpha");
            check_space(spec.kind, spec.alpha, "alpha");
            for (std::size_t l = 0; l < coords.size(); ++l) {
                spec.coords.push_back(function(coords[l], item("coords", l), spec.kind));
            }
            if (doc.rational && spec.coords.size() < 2) {
                fail("coords", "a rational curve needs at least one coordinate and a denominator");
            }
            doc.spec = std::move(spec);
            doc.orders = read_orders(root, 1);
            return doc;
        }

        for (const char* k : {"kind", "alpha"}) {
            if (root.contains(k)) fail(k, "not allowed for surfaces; use directions");
        }
        SurfaceSpec spec;
        const json& dirs = array_field(root, "", "directions");
        if (dirs.empty() || dirs.size() > max_directions) {
            fail("directions", "expected between 1 and " + std::to_string(max_directions) + " directions");
        }
        for (std::size_t j = 0; j < dirs.size(); ++j) {
            const std::string dp = item("directions", j);
            require_object(dirs[j], dp, {"kind", "alpha"});
            DirectionSpace d;
            d.kind = kind(field(dirs[j], dp, "kind"), child(dp, "kind"));
            d.alpha = angle(field(dirs[j], dp, "alpha"), child(dp, "alpha"));
            check_space(d.kind, d.alpha, child(dp, "alpha"));
            spec.directions.push_back(d);
        }
        spec.kappa = root.contains("kappa") ? integer(root.at("kappa"), "kappa") : 0;
        if (spec.kappa < 0) {
            fail("kappa", "must be non-negative");
        }
        const std::size_t expected = dirs.size() + static_cast<std::size_t>(spec.kappa) + (doc.rational ? 1 : 0);
        if (coords.size() != expected) {
            fail("coords", "expected " + std::to_string(expected) + " coordinate functions (delta + kappa" +
                               std::string(doc.rational ? " + denominator" : "") + "), got " +
                               std::to_string(coords.size()));
        }
        for (std::size_t l = 0; l < coords.size(); ++l) {
            const std::string cp = item("coords", l);
            require_object(coords[l], cp, {"summands"});
            const json& summands = array_field(coords[l], cp, "summands");
            SurfaceCoordinateFunction s;
            for (std::size_t z = 0; z < summands.size(); ++z) {
                const std::string sp = item(child(cp, "summands"), z);
                require_object(summands[z], sp, {"factors"});
                const json& factors = array_field(summands[z], sp, "factors");
                if (factors.size() != dirs.size()) {
                    fail(child(sp, "factors"), "expected " + std::to_string(dirs.size()) + " factors, got " +
                                                   std::to_string(factors.size()));
                }
                ProductTerm p;
                for (std::size_t j = 0; j < factors.size(); ++j) {
                    p.factors.push_back(
                        function(factors[j], item(child(sp, "factors"), j), spec.directions[j].kind));
                }
                s.summands.push_back(std::move(p));
            }
            spec.coords.push_back(std::move(s));
        }
        doc.orders = read_orders(root, dirs.size());
        doc.spec = std::move(spec);
        return doc;
    }

private:
    static std::vector<std::vector<int>> read_orders(const json& root, std::size_t delta) {
        std::vector<std::vector<int>> out;
        if (!root.contains("orders")) {
            return out;
        }
        const json& orders = array_field(root, "", "orders");
        for (std::size_t i = 0; i < orders.size(); ++i) {
            const std::string op = item("orders", i);
            std::vector<int> o;
            if (orders[i].is_array()) {
                for (std::size_t j = 0; j < orders[i].size(); ++j) {
                    o.push_back(integer(orders[i][j], item(op, j)));
                }
            } else {
                o.push_back(integer(orders[i], op));
            }
            if (o.size() != delta) {
                fail(op, "expected " + std::to_string(delta) + " order components");
            }
            for (std::size_t j = 0; j < o.size(); ++j) {
                if (o[j] < 1 || o[j] > max_order) {
                    fail(op, "order " + std::to_string(o[j]) + " outside [1, " + std::to_string(max_order) + "]");
                }
            }
            out.push_back(std::move(o));
        }
        return out;
    }

    std::string path_;
};

}  // namespace detail

inline SpecDocument parse_spec(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("spec: invalid JSON: ") + e.what());
    }
    return detail::SpecReader("").read(root);
}

// ---------------------------------------------------------------- numbers

/// Shortest decimal that parses back to the same double.
inline std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) {
        throw numerical_error("cannot format number");
    }
    return std::string(buf, ptr);
}

inline double parse_number(std::string_view s) {
    double out = 0.0;
    if (!detail::parse_double(s, out)) {
        throw validation_error("cannot parse number '" + std::string(s) + "'");
    }
    return out;
}

// ---------------------------------------------------------------- tables

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    friend bool operator==(const Table&, const Table&) = default;
};

inline Table matrix_table(const TransformMatrix& m) {
    Table t;
    for (std::size_t r = 0; r < m.size(); ++r) {
        const auto row = m.row(r);
        t.rows.emplace_back(row.begin(), row.end());
    }
    return t;
}

/// One row per control point: coordinates x1..xd, then the weight if rational.
inline Table points_table(const std::vector<Point>& points, const std::optional<std::vector<double>>& weights) {
    Table t;
    const std::size_t dim = points.empty() ? 0 : points.front().size();
    static const char* names[] = {"x", "y", "z"};
    for (std::size_t c = 0; c < dim; ++c) {
        t.columns.push_back(dim <= 3 ? names[c] : "x" + std::to_string(c + 1));
    }
    if (weights) {
        t.columns.push_back("w");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto row = points[i];
        if (weights) {
            row.push_back((*weights)[i]);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// One row per grid entry: the multi-index, the coordinates, the weight.
inline Table grid_table(const ControlGrid& grid) {
    Table t;
    for (std::size_t j = 0; j < grid.orders.size(); ++j) {
        t.columns.push_back("i" + std::to_string(j + 1));
    }
    static const char* names[] = {"x", "y", "z"};
    for (std::size_t c = 0; c < grid.dimension; ++c) {
        t.columns.push_back(grid.dimension <= 3 ? names[c] : "x" + std::to_string(c + 1));
    }
    if (grid.weights) {
        t.columns.push_back("w");
    }
    for (std::size_t k = 0; k < grid.count(); ++k) {
        std::vector<double> row;
        for (auto i : grid.multi_index(k)) {
            row.push_back(static_cast<double>(i));
        }
        for (std::size_t c = 0; c < grid.dimension; ++c) {
            row.push_back(grid.points[k * grid.dimension + c]);
        }
        if (grid.weights) {
            row.push_back((*grid.weights)[k]);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline std::string to_csv(const Table& t) {
    std::string out;
    if (!t.columns.empty()) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            out += (c ? "," : "") + t.columns[c];
        }
        out += '\n';
    }
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

/// Parses CSV written by to_csv; `header` says whether the first line names
/// the columns.
inline Table parse_csv(std::string_view text, bool header) {
    Table t;
    bool first = true;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string_view> cells;
        for (std::size_t start = 0;;) {
            const auto comma = line.find(',', start);
            cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (first && header) {
            for (auto c : cells) t.columns.emplace_back(c);
        } else {
            std::vector<double> row;
            for (auto c : cells) row.push_back(parse_number(c));
            t.rows.push_back(std::move(row));
        }
        first = false;
    }
    return t;
}

// nlohmann prints doubles in shortest round-trip form already; numbers are
// kept as doubles even when integral so that parse(export(x)) is exact.
inline json to_json(const Table& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::array();
        for (double x : row) r.push_back(x);
        rows.push_back(std::move(r));
    }
    return json{{"columns", t.columns}, {"rows", std::move(rows)}};
}

inline Table table_from_json(const json& j) {
    detail::SpecReader::require_object(j, "table", {"columns", "rows"});
    Table t;
    for (const auto& c : detail::SpecReader::array_field(j, "table", "columns")) {
        if (!c.is_string()) detail::SpecReader::fail("table.columns", "expected strings");
        t.columns.push_back(c.get<std::string>());
    }
    const auto& rows = detail::SpecReader::array_field(j, "table", "rows");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array()) detail::SpecReader::fail("table.rows[" + std::to_string(i) + "]", "expected an array");
        std::vector<double> row;
        for (std::size_t c = 0; c < rows[i].size(); ++c) {
            row.push_back(detail::SpecReader::number(rows[i][c],
                                                     "table.rows[" + std::to_string(i) + "][" + std::to_string(c) + "]"));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline std::string export_table(const Table& t, std::string_view format) {
    if (format == "csv") return to_csv(t);
    if (format == "json") return to_json(t).dump(2) + "\n";
    throw validation_error("--format: tables support csv or json, not '" + std::string(format) + "'");
}

inline json to_json(const ControlGrid& g) {
    json points = json::array();
    for (std::size_t k = 0; k < g.count(); ++k) {
        json p = json::array();
        for (std::size_t c = 0; c < g.dimension; ++c) p.push_back(g.points[k * g.dimension + c]);
        points.push_back(std::move(p));
    }
    json out{{"orders", g.orders}, {"dimension", g.dimension}, {"points", std::move(points)}};
    if (g.weights) out["weights"] = *g.weights;
    return out;
}

inline ControlGrid grid_from_json(const json& j) {
    using R = detail::SpecReader;
    R::require_object(j, "grid", {"orders", "dimension", "points", "weights"});
    ControlGrid g;
    const auto& orders = R::array_field(j, "grid", "orders");
    for (std::size_t i = 0; i < orders.size(); ++i) {
        g.orders.push_back(R::integer(orders[i], "grid.orders[" + std::to_string(i) + "]"));
        if (g.orders.back() < 1) R::fail("grid.orders", "orders must be positive");
    }
    const int dim = R::integer(R::field(j, "grid", "dimension"), "grid.dimension");
    if (dim < 1) R::fail("grid.dimension", "must be positive");
    g.dimension = static_cast<std::size_t>(dim);
    const auto& points = R::array_field(j, "grid", "points");
    if (points.size() != g.count()) R::fail("grid.points", "expected " + std::to_string(g.count()) + " points");
    for (std::size_t k = 0; k < points.size(); ++k) {
        const std::string p = "grid.points[" + std::to_string(k) + "]";
        if (!points[k].is_array() || points[k].size() != g.dimension) R::fail(p, "wrong dimension");
        for (std::size_t c = 0; c < g.dimension; ++c) g.points.push_back(R::number(points[k][c], p));
    }
    if (j.contains("weights")) {
        const auto& w = R::array_field(j, "grid", "weights");
        if (w.size() != g.count()) R::fail("grid.weights", "expected " + std::to_string(g.count()) + " weights");
        std::vector<double> weights;
        for (std::size_t k = 0; k < w.size(); ++k) weights.push_back(R::number(w[k], "grid.weights"));
        g.weights = std::move(weights);
    }
    return g;
}

// ---------------------------------------------------------------- SVG

struct SvgScene {
    std::vector<std::vector<Point>> curves;    ///< solid polylines
    std::vector<std::vector<Point>> polygons;  ///< dashed, labeled control polygons
    double width = 800.0;
};

namespace detail {

inline std::string fixed(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::fixed, 3);
    std::string s(buf, ec == std::errc() ? ptr : buf);
    return s == "-0.000" ? "0.000" : s;
}

}  // namespace detail

inline std::string export_svg(const SvgScene& scene) {
    if (scene.curves.empty() || std::any_of(scene.curves.begin(), scene.curves.end(),
                                            [](const auto& c) { return c.size() < 2; })) {
        throw validation_error("svg: every curve needs at least two samples");
    }
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    auto visit = [&](const std::vector<std::vector<Point>>& set) {
        for (const auto& line : set) {
            for (const auto& p : line) {
                if (p.size() != 2) throw validation_error("svg: points must be two-dimensional");
                if (!std::isfinite(p[0]) || !std::isfinite(p[1])) throw numerical_error("svg: non-finite point");
                xmin = std::min(xmin, p[0]);
                xmax = std::max(xmax, p[0]);
                ymin = std::min(ymin, p[1]);
                ymax = std::max(ymax, p[1]);
            }
        }
    };
    visit(scene.curves);
    visit(scene.polygons);

    const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double margin = 0.05 * span;
    const double vx = xmin - margin, vy = ymin - margin;
    const double vw = std::max(xmax - xmin, 1e-12) + 2 * margin;
    const double vh = std::max(ymax - ymin, 1e-12) + 2 * margin;
    const double scale = scene.width / vw;
    const double height = vh * scale;
    auto X = [&](double x) { return detail::fixed((x - vx) * scale); };
    auto Y = [&](double y) { return detail::fixed((vy + vh - y) * scale); };  // y up
    auto path = [&](const std::vector<Point>& line) {
        std::string d;
        for (std::size_t i = 0; i < line.size(); ++i) {
            d += (i ? " L " : "M ") + X(line[i][0]) + " " + Y(line[i][1]);
        }
        return d;
    };

    static const char* palette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + detail::fixed(scene.width) +
           "\" height=\"" + detail::fixed(height) + "\" viewBox=\"0 0 " + detail::fixed(scene.width) + " " +
           detail::fixed(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t p = 0; p < scene.polygons.size(); ++p) {
        const char* color = palette[p % 6];
        out += "<path class=\"polygon\" d=\"" + path(scene.polygons[p]) + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
        for (std::size_t i = 0; i < scene.polygons[p].size(); ++i) {
            const auto& v = scene.polygons[p][i];
            out += "<circle cx=\"" + X(v[0]) + "\" cy=\"" + Y(v[1]) + "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
            out += "<text x=\"" + X(v[0]) + "\" y=\"" + Y(v[1]) + "\" dx=\"4\" dy=\"-4\" font-size=\"11\" fill=\"" +
                   color + "\">d" + std::to_string(i) + "</text>\n";
        }
    }
    for (const auto& c : scene.curves) {
        out += "<path class=\"curve\" d=\"" + path(c) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

// ---------------------------------------------------------------- OBJ

/// A sampled lattice of 3D points, shape (N1, N2) for patches or
/// (N1, N2, N3) for volumes, last index fastest.
struct Lattice {
    std::vector<std::size_t> shape;
    std::vector<Point> points;
};

struct ObjScene {
    std::vector<Lattice> patches;
    std::vector<Lattice> nets;                ///< control nets, exported as edges
    std::vector<std::vector<Point>> polylines;  ///< sampled space curves / control polygons
};

namespace detail {

inline void check_lattice(const Lattice& l, const char* what) {
    if (l.shape.size() < 1 || l.shape.size() > 3) {
        throw validation_error(std::string("obj: ") + what + " lattice must have 1 to 3 directions");
    }
    std::size_t count = 1;
    for (auto n : l.shape) count *= n;
    if (count != l.points.size()) {
        throw validation_error(std::string("obj: ") + what + " lattice shape does not match point count");
    }
    for (const auto& p : l.points) {
        if (p.size() != 3) throw validation_error(std::string("obj: ") + what + " points must be three-dimensional");
    }
}

}  // namespace detail

inline std::string export_obj(const ObjScene& scene) {
    std::string out = "# tbasis\n";
    std::size_t next = 1;  // OBJ indices are 1-based
    auto vertex = [&](const Point& p) {
        out += "v " + format_double(p[0]) + " " + format_double(p[1]) + " " + format_double(p[2]) + "\n";
        return next++;
    };

    for (std::size_t s = 0; s < scene.patches.size(); ++s) {
        const Lattice& l = scene.patches[s];
        detail::check_lattice(l, "patch");
        out += "o patch" + std::to_string(s) + "\n";
        if (l.shape.size() == 2) {
            const std::size_t n1 = l.shape[0], n2 = l.shape[1];
            const std::size_t base = next;
            for (const auto& p : l.points) vertex(p);
            for (std::size_t i = 0; i + 1 < n1; ++i) {
                for (std::size_t j = 0; j + 1 < n2; ++j) {
                    const std::size_t a = base + i * n2 + j;
                    out += "f " + std::to_string(a) + " " + std::to_string(a + n2) + " " + std::to_string(a + n2 + 1) +
                           " " + std::to_string(a + 1) + "\n";
                }
            }
        } else if (l.shape.size() == 3) {
            // only the six boundary faces of the volume
            const std::size_t n1 = l.shape[0], n2 = l.shape[1], n3 = l.shape[2];
            std::map<std::size_t, std::size_t> ids;
            auto flat = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * n2 + j) * n3 + k; };
            auto id = [&](std::size_t f) {
                auto it = ids.find(f);
                return it != ids.end() ? it->second : 0;
            };
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < n2; ++j)
                    for (std::size_t k = 0; k < n3; ++k)
                        if (i == 0 || j == 0 || k == 0 || i + 1 == n1 || j + 1 == n2 || k + 1 == n3)
                            ids[flat(i, j, k)] = vertex(l.points[flat(i, j, k)]);
            auto quad = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
                out += "f " + std::to_string(id(a)) + " " + std::to_string(id(b)) + " " + std::to_string(id(c)) + " " +
                       std::to_string(id(d)) + "\n";
            };
            for (std::size_t side : {std::size_t{0}, n1 - 1})
                for (std::size_t j = 0; j + 1 < n2; ++j)
                    for (std::size_t k = 0; k + 1 < n3; ++k)
                        quad(flat(side, j, k), flat(side, j + 1, k), flat(side, j + 1, k + 1), flat(side, j, k + 1));
            for (std::size_t side : {std::size_t{0}, n2 - 1})
                for (std::size_t i = 0; i + 1 < n1; ++i)
                    for (std::size_t k = 0; k + 1 < n3; ++k)
                        quad(flat(i, side, k), flat(i + 1, side, k), flat(i + 1, side, k + 1), flat(i, side, k + 1));
            for (std::size_t side : {std::size_t{0}, n3 - 1})
                for (std::size_t i = 0; i + 1 < n1; ++i)
                    for (std::size_t j = 0; j + 1 < n2; ++j)
                        quad(flat(i, j, side), flat(i + 1, j, side), flat(i + 1, j + 1, side), flat(i, j + 1, side));
        } else {
            throw validation_error("obj: sampled patches need 2 or 3 directions");
        }
    }

    for (std::size_t s = 0; s < scene.nets.size(); ++s) {
        const Lattice& l = scene.nets[s];
        detail::check_lattice(l, "net");
        out += "o net" + std::to_string(s) + "\n";
        const std::size_t base = next;
        for (const auto& p : l.points) vertex(p);
        const std::size_t delta = l.shape.size();
        std::vector<std::size_t> stride(delta, 1);
        for (std::size_t j = delta - 1; j-- > 0;) stride[j] = stride[j + 1] * l.shape[j + 1];
        for (std::size_t f = 0; f < l.points.size(); ++f) {
            std::size_t rest = f;
            for (std::size_t j = 0; j < delta; ++j) {
                const std::size_t idx = (rest / stride[j]) % l.shape[j];
                if (idx + 1 < l.shape[j]) {
                    out += "l " + std::to_string(base + f) + " " + std::to_string(base + f + stride[j]) + "\n";
                }
            }
        }
    }

    for (std::size_t s = 0; s < scene.polylines.size(); ++s) {
        const auto& line = scene.polylines[s];
        if (line.size() < 2) throw validation_error("obj: polylines need at least two points");
        out += "o polyline" + std::to_string(s) + "\n";
        const std::size_t base = next;
        for (const auto& p : line) {
            if (p.size() != 3) throw validation_error("obj: polyline points must be three-dimensional");
            vertex(p);
        }
        out += "l";
        for (std::size_t i = 0; i < line.size(); ++i) out += " " + std::to_string(base + i);
        out += "\n";
    }
    return out;
}

}  // namespace tbasis
