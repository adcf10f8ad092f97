#pragma once
/**
 * Command-line front end: parse, solve, verify, generate, render, bench.
 * Everything is exposed as a function of the argument list so the whole
 * surface stays testable; the binary is a thin wrapper.
 */

#include <chrono>
#include <fstream>
#include <sstream>

#include "rgallery/generators.hpp"
#include "rgallery/oracle.hpp"
#include "rgallery/point_guards.hpp"

namespace rgallery {

/// Everything the solvers need, built once from a domain.
struct Workspace {
    RectilinearDomain domain;
    SliceSet hs, vs;
    RTree th, tv;
    SideLabels hlabels, vlabels;
    std::unique_ptr<PixelationGraph> graph;

    explicit Workspace(RectilinearDomain d) : domain(std::move(d)) {
        hs = decompose(domain, Orientation::Horizontal);
        vs = decompose(domain, Orientation::Vertical);
        th = build_rtree(hs);
        tv = build_rtree(vs);
        hlabels = attach_labels(domain, hs);
        vlabels = attach_labels(domain, vs);
        graph = std::make_unique<PixelationGraph>(hs, vs, th, tv, hlabels, vlabels);
    }

    const PixelationGraph& g() const { return *graph; }
};

namespace cli {

struct Result {
    int exit_code = 0;
    std::string out;
    std::string err;
};

namespace detail {

/// Undoubled exact coordinate with denominator at most 2.
inline std::string rat(Coord doubled) {
    if (doubled % 2 == 0) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

inline std::string rect_json(const AxisRect& r) {
    return "[" + rat(r.xmin) + "," + rat(r.ymin) + "," + rat(r.xmax) + "," + rat(r.ymax) + "]";
}

inline std::string quoted(const std::string& s) { return "\"" + s + "\""; }

struct Args {
    std::vector<std::string> positional;
    std::map<std::string, std::string> options;
    std::set<std::string> flags;

    static Args parse(const std::vector<std::string>& argv, const std::set<std::string>& known_flags,
                      const std::set<std::string>& known_options) {
        Args a;
        for (size_t i = 0; i < argv.size(); ++i) {
            const std::string& tok = argv[i];
            if (known_flags.count(tok)) {
                a.flags.insert(tok);
            } else if (known_options.count(tok)) {
                if (i + 1 >= argv.size()) throw MalformedInput("missing value for " + tok);
                a.options[tok] = argv[++i];
            } else if (!tok.empty() && tok[0] == '-') {
                throw MalformedInput("unknown option " + tok);
            } else {
                a.positional.push_back(tok);
            }
        }
        return a;
    }

    std::string option(const std::string& key, const std::string& fallback = "") const {
        auto it = options.find(key);
        return it == options.end() ? fallback : it->second;
    }
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline long long parse_int(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw MalformedInput(std::string("expected an integer for ") + what);
    }
}

inline double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

inline std::string mobile_section(const Workspace& w, const MobileGuardSolution& sol) {
    const SliceSet& set =
        sol.guard_orientation == Orientation::Horizontal ? w.hs : w.vs;
    std::string out = "{\"size\":" + std::to_string(sol.size()) + ",\"guards\":[";
    for (size_t i = 0; i < sol.guards.size(); ++i) {
        const AxisRect& r = set.rect(sol.guards[i]);
        if (i) out += ',';
        out += "{\"slice\":" + std::to_string(sol.guards[i]) + ",\"rect\":" + rect_json(r) +
               ",\"segment\":";
        // Maximal patrol segment: the slice's axis midline, clipped to it.
        if (sol.guard_orientation == Orientation::Horizontal)
            out += "{\"y\":" + quoted(rat((r.ymin + r.ymax) / 2)) + ",\"x0\":" + quoted(rat(r.xmin)) +
                   ",\"x1\":" + quoted(rat(r.xmax)) + "}";
        else
            out += "{\"x\":" + quoted(rat((r.xmin + r.xmax) / 2)) + ",\"y0\":" + quoted(rat(r.ymin)) +
                   ",\"y1\":" + quoted(rat(r.ymax)) + "}";
        out += '}';
    }
    out += "],\"witness\":[";
    for (size_t i = 0; i < sol.witness.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(sol.witness[i]);
    }
    out += "]}";
    return out;
}

inline void emit(Result& r, const Args& a, const std::string& payload) {
    std::string path = a.option("--out");
    if (path.empty()) path = a.option("-o");
    if (path.empty()) {
        r.out = payload;
        return;
    }
    std::ofstream out(path);
    if (!out) throw MalformedInput("cannot write " + path);
    out << payload;
    r.out = "wrote " + path + "\n";
}

// --- solve -----------------------------------------------------------------

inline std::string solve_report(const Workspace& w, bool with_mhsc, bool with_mvsc,
                                bool with_points, bool with_timing) {
    std::string out = "{\"schema\":\"gg/1\",\"input\":{";
    out += "\"n\":" + std::to_string(w.domain.size());
    out += ",\"slices_h\":" + std::to_string(w.hs.size());
    out += ",\"slices_v\":" + std::to_string(w.vs.size());
    out += ",\"pixel_edges\":" + std::to_string(w.g().edge_count());
    out += "}";

    std::map<std::string, double> timings;
    bool mhsc_cert = true, mvsc_cert = true, mhsc_cover = true, mvsc_cover = true;
    bool point_cover = true, bound_ok = true;
    MobileGuardSolution mh, mv;
    if (with_mhsc || with_points) {
        auto t0 = std::chrono::steady_clock::now();
        mh = solve_mhsc(w.g());
        timings["mhsc"] = ms_since(t0);
        mhsc_cert = verify_certificate(w.g(), mh);
        mhsc_cover = verify_mobile_cover(w.g(), mh.guards, Orientation::Horizontal);
    }
    if (with_mvsc || with_points) {
        auto t0 = std::chrono::steady_clock::now();
        mv = solve_mvsc(w.g());
        timings["mvsc"] = ms_since(t0);
        mvsc_cert = verify_certificate(w.g(), mv);
        mvsc_cover = verify_mobile_cover(w.g(), mv.guards, Orientation::Vertical);
    }
    if (with_mhsc) out += ",\"mhsc\":" + mobile_section(w, mh);
    if (with_mvsc) out += ",\"mvsc\":" + mobile_section(w, mv);
    if (with_points) {
        auto t0 = std::chrono::steady_clock::now();
        PointGuardSolution z = assemble(w.g(), mh.guards, mv.guards);
        timings["point_guards"] = ms_since(t0);
        point_cover = verify_point_cover(w.g(), z.guards);
        bound_ok = static_cast<long long>(z.guards.size()) <= z.bound;
        out += ",\"point_guards\":{\"count\":" + std::to_string(z.guards.size()) +
               ",\"bound\":" + std::to_string(z.bound) + ",\"pixels\":[";
        for (size_t i = 0; i < z.guards.size(); ++i) {
            if (i) out += ',';
            out += "[" + std::to_string(z.guards[i].h) + "," + std::to_string(z.guards[i].v) + "]";
        }
        out += "],\"points\":[";
        for (size_t i = 0; i < z.points.size(); ++i) {
            if (i) out += ',';
            out += "[" + quoted(rat(z.points[i].x)) + "," + quoted(rat(z.points[i].y)) + "]";
        }
        out += "]}";
    }
    out += ",\"verify\":{";
    out += "\"mhsc_certificate\":" + std::string(mhsc_cert ? "true" : "false");
    out += ",\"mvsc_certificate\":" + std::string(mvsc_cert ? "true" : "false");
    out += ",\"mhsc_covers\":" + std::string(mhsc_cover ? "true" : "false");
    out += ",\"mvsc_covers\":" + std::string(mvsc_cover ? "true" : "false");
    out += ",\"point_covers\":" + std::string(point_cover ? "true" : "false");
    out += ",\"bound_ok\":" + std::string(bound_ok ? "true" : "false");
    out += "}";
    if (with_timing) {
        out += ",\"timings_ms\":{";
        bool first = true;
        for (const auto& [key, value] : timings) {
            if (!first) out += ',';
            first = false;
            std::ostringstream ss;
            ss.precision(3);
            ss << std::fixed << value;
            out += quoted(key) + ":" + ss.str();
        }
        out += "}";
    }
    out += "}\n";
    return out;
}

// --- render ------------------------------------------------------------------

inline std::string render_svg(const Workspace& w) {
    AxisRect bb = w.domain.bounding_box();
    const Coord margin = 4;
    Coord width = bb.width() + 2 * margin;
    Coord height = bb.height() + 2 * margin;
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 " << width
        << ' ' << height << "\">\n";
    // Flip y so the domain reads with the usual orientation.
    svg << "<g transform=\"translate(" << margin - bb.xmin << ',' << bb.ymax + margin
        << ") scale(1,-1)\">\n";
    svg << "<path d=\"";
    const auto& verts = w.domain.vertices();
    for (size_t i = 0; i < verts.size(); ++i)
        svg << (i == 0 ? 'M' : 'L') << verts[i].x << ' ' << verts[i].y << ' ';
    svg << "Z\" fill=\"#f4f1e8\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
    for (const SliceSet* set : {&w.hs, &w.vs})
        for (const Slice& s : set->slices)
            svg << "<rect x=\"" << s.rect.xmin << "\" y=\"" << s.rect.ymin << "\" width=\""
                << s.rect.width() << "\" height=\"" << s.rect.height()
                << "\" fill=\"none\" stroke=\"#b0b0b0\" stroke-width=\"0.15\" "
                   "stroke-dasharray=\"0.7,0.9\"/>\n";
    MobileGuardSolution mh = solve_mhsc(w.g());
    MobileGuardSolution mv = solve_mvsc(w.g());
    for (int id : mh.guards) {
        const AxisRect& r = w.hs.rect(id);
        Coord y2 = r.ymin + r.ymax;  // doubled midline
        svg << "<line x1=\"" << r.xmin << "\" y1=\"" << y2 / 2.0 << "\" x2=\"" << r.xmax
            << "\" y2=\"" << y2 / 2.0
            << "\" stroke=\"#c84b21\" stroke-width=\"0.45\" stroke-dasharray=\"2.2,1.4\"/>\n";
    }
    for (int id : mv.guards) {
        const AxisRect& r = w.vs.rect(id);
        Coord x2 = r.xmin + r.xmax;
        svg << "<line x1=\"" << x2 / 2.0 << "\" y1=\"" << r.ymin << "\" x2=\"" << x2 / 2.0
            << "\" y2=\"" << r.ymax
            << "\" stroke=\"#1a7f4e\" stroke-width=\"0.45\" stroke-dasharray=\"2.2,1.4\"/>\n";
    }
    PointGuardSolution z = assemble(w.g(), mh.guards, mv.guards);
    for (const Point& p : z.points)
        svg << "<circle cx=\"" << p.x << "\" cy=\"" << p.y
            << "\" r=\"0.9\" fill=\"#1d4ed8\"/>\n";
    svg << "</g>\n</svg>\n";
    return svg.str();
}

// --- bench -------------------------------------------------------------------

inline double time_mobile_solve(int k) {
    auto build_start = std::chrono::steady_clock::now();
    Workspace w(comb(k));
    (void)build_start;
    int reps = 0;
    auto t0 = std::chrono::steady_clock::now();
    double elapsed = 0;
    do {
        Workspace fresh(comb(k));
        auto sh = solve_mhsc(fresh.g());
        auto sv = solve_mvsc(fresh.g());
        if (sh.size() != 1 || sv.size() != k) throw StructureViolation("bench solve wrong");
        ++reps;
        elapsed = ms_since(t0);
    } while (elapsed < 200.0 && reps < 5);
    return elapsed / reps;
}

}  // namespace detail

inline Result run(const std::vector<std::string>& argv) {
    Result r;
    try {
        if (argv.empty()) {
            r.err =
                "usage: rguard <solve|exact|generate|render|bench> ...\n"
                "  solve <polygon.json> [--mhsc] [--mvsc] [--point-guards] [--no-timing] [--out f]\n"
                "  exact <polygon.json> --exact <mhsc|mvsc|msc|point> [--cap n] [--out f]\n"
                "  generate --family <comb|sharpness|random> [--k n] [--n n] [--seed s] [--out f]\n"
                "  render <polygon.json> -o out.svg\n"
                "  bench [--max-k n]\n";
            r.exit_code = 1;
            return r;
        }
        const std::string cmd = argv[0];
        std::vector<std::string> rest(argv.begin() + 1, argv.end());
        if (cmd == "solve") {
            auto a = detail::Args::parse(rest, {"--mhsc", "--mvsc", "--point-guards", "--no-timing"},
                                         {"--out"});
            if (a.positional.size() != 1) throw MalformedInput("solve needs one input file");
            Workspace w(parse_domain(detail::read_file(a.positional[0])));
            bool any = a.flags.count("--mhsc") || a.flags.count("--mvsc") ||
                       a.flags.count("--point-guards");
            bool mh = !any || a.flags.count("--mhsc");
            bool mv = !any || a.flags.count("--mvsc");
            bool pg = !any || a.flags.count("--point-guards");
            detail::emit(r, a, detail::solve_report(w, mh, mv, pg, !a.flags.count("--no-timing")));
        } else if (cmd == "exact") {
            auto a = detail::Args::parse(rest, {}, {"--exact", "--cap", "--out"});
            if (a.positional.size() != 1) throw MalformedInput("exact needs one input file");
            std::string kind = a.option("--exact");
            if (kind.empty()) throw MalformedInput("exact needs --exact <mhsc|mvsc|msc|point>");
            Workspace w(parse_domain(detail::read_file(a.positional[0])));
            OracleResult res;
            if (kind == "mhsc")
                res = exact_mobile(w.g(), Orientation::Horizontal,
                                   static_cast<int>(detail::parse_int(a.option("--cap", "24"), "--cap")));
            else if (kind == "mvsc")
                res = exact_mobile(w.g(), Orientation::Vertical,
                                   static_cast<int>(detail::parse_int(a.option("--cap", "24"), "--cap")));
            else if (kind == "msc")
                res = exact_msc(w.g(), static_cast<int>(detail::parse_int(a.option("--cap", "24"), "--cap")));
            else if (kind == "point")
                res = exact_point(w.g(), static_cast<int>(detail::parse_int(a.option("--cap", "32"), "--cap")));
            else
                throw MalformedInput("unknown exact kind " + kind);
            std::string out = "{\"kind\":" + detail::quoted(kind) +
                              ",\"optimum\":" + std::to_string(res.optimum) + ",\"witness\":[";
            for (size_t i = 0; i < res.witness.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(res.witness[i]);
            }
            out += "],\"explored\":" + std::to_string(res.explored) + "}\n";
            detail::emit(r, a, out);
        } else if (cmd == "generate") {
            auto a = detail::Args::parse(rest, {}, {"--family", "--k", "--n", "--seed", "--out"});
            std::string family = a.option("--family");
            RectilinearDomain d = [&]() {
                if (family == "comb")
                    return comb(static_cast<int>(detail::parse_int(a.option("--k", "10"), "--k")));
                if (family == "sharpness")
                    return sharpness(static_cast<int>(detail::parse_int(a.option("--k", "4"), "--k")));
                if (family == "random")
                    return random_domain(
                        static_cast<int>(detail::parse_int(a.option("--n", "20"), "--n")),
                        static_cast<uint64_t>(detail::parse_int(a.option("--seed", "1"), "--seed")));
                throw MalformedInput("generate needs --family <comb|sharpness|random>");
            }();
            detail::emit(r, a, domain_to_json(d) + "\n");
        } else if (cmd == "render") {
            auto a = detail::Args::parse(rest, {}, {"-o", "--out"});
            if (a.positional.size() != 1) throw MalformedInput("render needs one input file");
            Workspace w(parse_domain(detail::read_file(a.positional[0])));
            detail::emit(r, a, detail::render_svg(w));
        } else if (cmd == "bench") {
            auto a = detail::Args::parse(rest, {}, {"--family", "--max-k"});
            std::string family = a.option("--family", "comb");
            if (family != "comb") throw MalformedInput("bench supports --family comb");
            long long maxk = detail::parse_int(a.option("--max-k", "100000"), "--max-k");
            std::string out = "k n time_ms\n";
            for (long long k = 1000; k <= maxk; k *= 10) {
                double ms = detail::time_mobile_solve(static_cast<int>(k));
                std::ostringstream line;
                line.precision(3);
                line << k << ' ' << 4 * k << ' ' << std::fixed << ms << '\n';
                out += line.str();
            }
            r.out = out;
        } else {
            throw MalformedInput("unknown command " + cmd);
        }
    } catch (const MalformedInput& e) {
        r.err = std::string("error: ") + e.what() + "\n";
        r.exit_code = 1;
    } catch (const InvalidPolygon& e) {
        r.err = std::string("invalid polygon: ") + e.what() + "\n";
        r.exit_code = 1;
    } catch (const PointOutsideDomain& e) {
        r.err = std::string("error: ") + e.what() + "\n";
        r.exit_code = 1;
    } catch (const UnsupportedParameter& e) {
        r.err = std::string("error: ") + e.what() + "\n";
        r.exit_code = 1;
    } catch (const TooLarge& e) {
        r.err = std::string("error: ") + e.what() + "\n";
        r.exit_code = 1;
    } catch (const std::exception& e) {
        r.err = std::string("internal error: ") + e.what() + "\n";
        r.exit_code = 2;
    }
    return r;
}

}  // namespace cli
}  // namespace rgallery
