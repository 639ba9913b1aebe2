#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spinvol/spinvol.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace spinvol;

namespace {

constexpr const char *kVersion = "0.1.0";

enum ExitCode { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<HalfInt> parse_spins(const std::vector<std::string> &args, bool twice, std::size_t expected) {
    if (args.size() != expected)
        throw ParseError("expected " + std::to_string(expected) + " spins, got " + std::to_string(args.size()));
    std::vector<HalfInt> out;
    for (const auto &a : args)
        out.push_back(parse_spin(a, twice));
    return out;
}

json twice_array(const std::vector<HalfInt> &v) {
    json a = json::array();
    for (auto s : v)
        a.push_back(s.twice());
    return a;
}

/// Writes CSV files into one directory and the manifest that lists them.
class OutputDir {
  public:
    OutputDir(fs::path dir, std::string command) : dir_(std::move(dir)), command_(std::move(command)) {
        fs::create_directories(dir_);
    }

    std::ofstream open(const std::string &name) {
        files_.push_back(name);
        std::ofstream f(dir_ / name, std::ios::binary);
        if (!f)
            throw DomainError("cannot write " + (dir_ / name).string());
        return f;
    }

    void write_manifest(json parameters, const std::vector<HalfInt> &spins, double seconds) const {
        json m;
        m["command"] = command_;
        m["parameters"] = std::move(parameters);
        m["spins_twice"] = twice_array(spins);
        m["outputs"] = files_;
        m["tool_version"] = kVersion;
        m["timing_seconds"] = seconds;
        std::ofstream f(dir_ / "manifest.json", std::ios::binary);
        f << m.dump(2) << '\n';
    }

    const fs::path &path() const { return dir_; }

  private:
    fs::path dir_;
    std::string command_;
    std::vector<std::string> files_;
};

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// sixj ----------------------------------------------------------------------

struct SixjArgs {
    std::vector<std::string> spins;
    bool twice = false;
    std::string sweep;
};

int run_sixj(const SixjArgs &a) {
    if (!a.sweep.empty()) {
        int pos = -1;
        std::vector<std::string> fixed = a.spins;
        for (std::size_t i = 0; i < fixed.size(); ++i)
            if (fixed[i] == ".") {
                if (pos >= 0)
                    throw ParseError("more than one '.' in sweep template");
                pos = static_cast<int>(i);
                fixed[i] = "0";
            }
        if (pos < 0)
            throw ParseError("--sweep needs '.' marking the swept entry");
        const auto v = parse_spins(fixed, a.twice, 6);
        const auto rows = sixj_sweep(SixJ{v[0], v[1], v[2], v[3], v[4], v[5]}, pos);
        std::cout << a.sweep << ",value\n";
        for (const auto &p : rows)
            std::cout << p.x.str() << ',' << num(p.value) << '\n';
        return kOk;
    }
    const auto v = parse_spins(a.spins, a.twice, 6);
    const SixJ s{v[0], v[1], v[2], v[3], v[4], v[5]};
    std::cout << s.str() << '\n';
    if (s.trivial_zero()) {
        std::cout << "0 (trivial zero)\n";
        return kOk;
    }
    const auto val = sixj_exact(s);
    const auto [q, n] = val.exact.reduced();
    std::cout << "exact: " << val.exact.reduced_str() << '\n'
              << "rational part: " << q.str() << '\n'
              << "radical part: sqrt(" << n.str() << ")\n"
              << "float: " << num(val.exact.to_double()) << '\n';
    return kOk;
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
    std::string identity;
    int max_twice = 4;
    bool exhaustive = false;
    std::size_t count = 100;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

IdentityId identity_from(const std::string &s) {
    if (s == "orthonormality")
        return IdentityId::orthonormality;
    if (s == "racah")
        return IdentityId::racah_sum;
    if (s == "triple")
        return IdentityId::triple_sum;
    if (s == "be")
        return IdentityId::biedenharn_elliott;
    throw ParseError("unknown identity " + s);
}

json report_json(const IdentityReport &r) {
    json j;
    j["identity"] = identity_name(r.id);
    json p, pt;
    for (const auto &[name, v] : r.parameters) {
        p[name] = v.str();
        pt[name] = v.twice();
    }
    j["params"] = p;
    j["params_twice"] = pt;
    j["holds"] = r.holds;
    j["vacuous"] = r.vacuous;
    j["lhs"] = r.lhs.str();
    j["rhs"] = r.rhs.str();
    j["lhs_float"] = r.lhs.to_double();
    j["nonzero_terms"] = r.nonzero_terms;
    return j;
}

int run_verify(const VerifyArgs &a) {
    const IdentityId id = identity_from(a.identity);
    if (a.max_twice < 0)
        throw ParseError("--max-twice must be nonnegative");
    const std::size_t arity = identity_arity(id);
    std::vector<std::vector<HalfInt>> cases;
    if (a.exhaustive) {
        const std::size_t base = static_cast<std::size_t>(a.max_twice) + 1;
        std::size_t total = 1;
        for (std::size_t i = 0; i < arity; ++i)
            total *= base;
        std::vector<HalfInt> v(arity);
        for (std::size_t k = 0; k < total; ++k) {
            std::size_t r = k;
            for (std::size_t i = 0; i < arity; ++i, r /= base)
                v[arity - 1 - i] = HalfInt::from_twice(static_cast<std::int64_t>(r % base));
            cases.push_back(v);
        }
    } else {
        std::mt19937_64 rng(a.seed);
        for (std::size_t k = 0; k < a.count; ++k)
            cases.push_back(sample_admissible(id, rng, a.max_twice));
    }

    std::vector<IdentityReport> reports(cases.size());
    parallel_for(cases.size(), [&](std::size_t i) { reports[i] = check_identity(id, cases[i]); }, a.threads);

    std::size_t failures = 0, vacuous = 0, records = 0;
    for (const auto &r : reports) {
        if (r.vacuous && a.exhaustive) {
            ++vacuous;
            continue;
        }
        ++records;
        std::cout << report_json(r).dump() << '\n';
        if (!r.holds) {
            ++failures;
            std::cerr << "FAILED " << identity_name(r.id) << ':';
            for (const auto &[name, v] : r.parameters)
                std::cerr << ' ' << name << '=' << v.str();
            std::cerr << " lhs=" << r.lhs.str() << " rhs=" << r.rhs.str() << '\n';
        }
    }
    json summary{{"identity", identity_name(id)}, {"records", records}, {"skipped_vacuous", vacuous},
                 {"failures", failures}};
    std::cerr << summary.dump() << '\n';
    return failures == 0 ? kOk : kVerifyFailed;
}

// caustics ------------------------------------------------------------------

struct CausticArgs {
    std::vector<std::string> spins;
    bool twice = false;
    std::string screen = "xz";
    bool all = false;
    std::size_t resolution = 256;
    double shift = 0.5;
    std::string out = "spinvol-out";
    bool svg = false;
    unsigned threads = 0;
};

Screen screen_from(const std::string &s) {
    if (s == "xz")
        return Screen::xz;
    if (s == "xy")
        return Screen::xy;
    if (s == "yz")
        return Screen::yz;
    throw ParseError("unknown screen " + s);
}

void write_svg(std::ostream &os, const ScreenGrid &g) {
    const double W = 512, pad = 16;
    const auto &G = g.v2;
    auto px = [&](const Point2 &p) {
        const double x = pad + (p.u - G.u0) / (G.u1 - G.u0) * (W - 2 * pad);
        const double y = W - pad - (p.v - G.v0) / (G.v1 - G.v0) * (W - 2 * pad);
        return num(x) + "," + num(y);
    };
    auto path = [&](const Polyline &line, const char *colour) {
        if (line.size() < 2)
            return;
        os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < line.size(); ++i)
            os << (i ? " " : "") << px(line[i]);
        os << "\"/>\n";
    };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\"0 0 512 512\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"512\" height=\"512\" fill=\"white\"/>\n"
       << "<text x=\"" << pad << "\" y=\"12\" font-size=\"10\">" << g.symbol.str() << "</text>\n";
    for (const auto &c : g.caustic)
        path(c, "black");
    path(g.u_ridge, "red");
    path(g.v_ridge, "blue");
    os << "</svg>\n";
}

void write_screen(OutputDir &out, const ScreenGrid &g) {
    const std::string stem = std::string("screen_") + screen_name(g.symbol.screen);
    const std::string u(1, g.symbol.u_name), v(1, g.symbol.v_name);
    {
        auto f = out.open(stem + "_grid.csv");
        f << u << ',' << v << ',' << u << "_length," << v << "_length,v2\n";
        for (std::size_t iv = 0; iv < g.v2.nv; ++iv)
            for (std::size_t iu = 0; iu < g.v2.nu; ++iu) {
                const double uu = g.v2.u_at(iu), vv = g.v2.v_at(iv);
                f << num(uu) << ',' << num(vv) << ',' << num(uu + g.shift) << ',' << num(vv + g.shift) << ','
                  << num(g.v2.at(iu, iv)) << '\n';
            }
    }
    {
        auto f = out.open(stem + "_caustic.csv");
        f << "curve_id,point_index," << u << ',' << v << '\n';
        for (std::size_t c = 0; c < g.caustic.size(); ++c)
            for (std::size_t i = 0; i < g.caustic[c].size(); ++i)
                f << c << ',' << i << ',' << num(g.caustic[c][i].u) << ',' << num(g.caustic[c][i].v) << '\n';
    }
    {
        // ridge names the variable in which V² is stationary
        auto f = out.open(stem + "_ridges.csv");
        f << "ridge,point_index," << u << ',' << v << '\n';
        const std::pair<const std::string &, const Polyline &> ridges[] = {{u, g.u_ridge}, {v, g.v_ridge}};
        for (const auto &[name, line] : ridges)
            for (std::size_t i = 0; i < line.size(); ++i)
                f << name << ',' << i << ',' << num(line[i].u) << ',' << num(line[i].v) << '\n';
    }
}

int run_caustics(const CausticArgs &a) {
    const Stopwatch clock;
    const auto v = parse_spins(a.spins, a.twice, 4);
    const auto net = canonicalize(QuadSpins{v[0], v[1], v[2], v[3]});
    ScanOptions opt;
    opt.shift = a.shift;
    opt.threads = a.threads;
    OutputDir out(a.out, "caustics");
    std::vector<Screen> screens;
    if (a.all)
        screens = {Screen::xz, Screen::xy, Screen::yz};
    else
        screens = {screen_from(a.screen)};
    for (Screen s : screens) {
        const ScreenGrid g = caustic_scan(net, s, a.resolution, opt);
        write_screen(out, g);
        if (a.svg) {
            auto f = out.open(std::string("screen_") + screen_name(s) + ".svg");
            write_svg(f, g);
        }
        std::size_t closed = 0;
        for (const auto &c : g.caustic)
            closed += is_closed(c) ? 1 : 0;
        std::cout << screen_name(s) << ": " << g.symbol.str() << " caustic curves " << g.caustic.size()
                  << " (closed " << closed << "), ridge points " << g.u_ridge.size() << '+' << g.v_ridge.size()
                  << '\n';
    }
    if (a.all) {
        const EggSurface egg = egg_surface(net, a.resolution, opt);
        auto f = out.open("egg_xyz.csv");
        f << "shell,fraction,x,y,z,volume\n";
        for (const auto &s : egg.samples)
            f << s.shell << ',' << num(kEggFractions[s.shell]) << ',' << num(s.x) << ',' << num(s.y) << ','
              << num(s.z) << ',' << num(s.volume) << '\n';
        std::cout << "xyz: " << egg.samples.size() << " shell samples, max volume " << num(egg.v_max) << '\n';
    }
    json params{{"screens", a.all ? "all" : a.screen},
                {"resolution", a.resolution},
                {"shift", a.shift},
                {"canonical_twice", twice_array({net.quad.a, net.quad.b, net.quad.c, net.quad.d})}};
    out.write_manifest(params, v, clock.seconds());
    return kOk;
}

// volume --------------------------------------------------------------------

struct VolumeArgs {
    std::vector<std::string> spins;
    bool twice = false;
    std::string basis = "x";
    std::vector<std::string> emit{"spectrum"};
    double shift = 0.5;
    std::size_t samples = 512;
    bool oracle = false;
    std::string out = "spinvol-out";
};

Basis basis_from(const std::string &s) {
    if (s == "x")
        return Basis::x;
    if (s == "y")
        return Basis::y;
    if (s == "z")
        return Basis::z;
    throw ParseError("unknown basis " + s);
}

int run_volume(const VolumeArgs &a) {
    const Stopwatch clock;
    const auto v = parse_spins(a.spins, a.twice, 4);
    const QuadSpins quad{v[0], v[1], v[2], v[3]};
    const auto net = canonicalize(quad);
    bool want_spectrum = false, want_potentials = false, want_eigen = false;
    for (const auto &e : a.emit) {
        if (e == "spectrum")
            want_spectrum = true;
        else if (e == "potentials")
            want_potentials = true;
        else if (e == "eigenfunctions")
            want_eigen = true;
        else
            throw ParseError("unknown --emit value " + e);
    }
    std::optional<OracleVolume> oracle;
    if (a.oracle)
        oracle = oracle_k_matrix(quad); // refuses spins above the bound before any output

    OutputDir out(a.out, "volume");
    const TridiagonalOperator t = build_k_matrix(net, basis_from(a.basis));
    const VolumeSpectrum spec = diagonalize(t, want_eigen);
    std::cout << "canonical " << net.quad.str() << ", basis " << a.basis << ", dim " << t.dim() << '\n';
    if (want_spectrum) {
        auto f = out.open("spectrum.csv");
        f << "index,eigenvalue\n";
        for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k)
            f << k << ',' << num(spec.eigenvalues[k]) << '\n';
    }
    if (want_potentials) {
        const PotentialCurve pc = potentials(net, a.samples, a.shift);
        auto f = out.open("potentials.csv");
        f << "x,x_label,u_plus,u_minus\n";
        for (std::size_t i = 0; i < pc.x.size(); ++i)
            f << num(pc.x[i]) << ',' << num(pc.x[i] - a.shift) << ',' << num(pc.u_plus[i]) << ','
              << num(pc.u_minus[i]) << '\n';
    }
    if (want_eigen) {
        const auto grid = eigenfunction_grid(spec);
        auto f = out.open("eigenfunctions.csv");
        f << "k,x,abs_component\n";
        for (std::size_t k = 0; k < grid.size(); ++k)
            for (std::size_t i = 0; i < grid[k].size(); ++i)
                f << k << ',' << t.basis_labels[i].str() << ',' << num(grid[k][i]) << '\n';
    }
    int rc = kOk;
    json params{{"basis", a.basis}, {"emit", a.emit}, {"shift", a.shift}, {"samples", a.samples},
                {"canonical_twice", twice_array({net.quad.a, net.quad.b, net.quad.c, net.quad.d})}};
    if (oracle) {
        double scale = 0, dev = 0;
        if (oracle->spectrum.size() != spec.eigenvalues.size()) {
            dev = std::numeric_limits<double>::infinity();
        } else {
            for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
                scale = std::max(scale, std::fabs(oracle->spectrum[k]));
                dev = std::max(dev, std::fabs(oracle->spectrum[k] - spec.eigenvalues[k]));
            }
        }
        const double rel = scale > 0 ? dev / scale : dev;
        std::cout << "oracle closure dim " << oracle->closure_dim << ", max spectral deviation " << num(dev)
                  << " (relative " << num(rel) << ")\n";
        params["oracle_max_deviation"] = dev;
        if (!(rel <= 1e-10))
            rc = kVerifyFailed;
    }
    out.write_manifest(params, v, clock.seconds());
    return rc;
}

// fano ----------------------------------------------------------------------

int run_fano(const std::vector<std::string> &spins, bool twice) {
    const auto v = parse_spins(spins, twice, 4);
    const auto net = canonicalize(QuadSpins{v[0], v[1], v[2], v[3]});
    const FanoPlane f = fano_incidence(net);
    auto label = [&](char p) -> std::string {
        switch (p) {
        case 'a':
        case 'b':
        case 'c':
        case 'd':
            return std::string(1, p) + "=" + f.sides[static_cast<std::size_t>(p - 'a')].str();
        case 'x':
            return "x in [" + f.x_range.lo.str() + ".." + f.x_range.hi.str() + "]";
        case 'y':
            return "y in [" + f.y_range.lo.str() + ".." + f.y_range.hi.str() + "]";
        default:
            return "z in [" + f.z_range.lo.str() + ".." + f.z_range.hi.str() + "]";
        }
    };
    std::cout << "canonical " << net.quad.str() << '\n';
    for (const auto &l : f.lines)
        std::cout << '(' << l[0] << ',' << l[1] << ',' << l[2] << ")  " << label(l[0]) << "; " << label(l[1])
                  << "; " << label(l[2]) << '\n';
    const bool ok = f.valid();
    std::cout << (ok ? "fano axioms hold\n" : "fano axioms violated\n");
    return ok ? kOk : kVerifyFailed;
}

unsigned env_threads() {
    if (const char *e = std::getenv("SPINVOL_THREADS")) {
        try {
            return static_cast<unsigned>(std::stoul(e));
        } catch (const std::exception &) {
            throw ParseError(std::string("bad SPINVOL_THREADS value ") + e);
        }
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact 6j symbols, Regge-canonical spin networks, screens and the volume operator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    unsigned threads = 0;
    bool threads_given = false;
    app.add_option_function<unsigned>(
           "--threads",
           [&](unsigned n) {
               threads = n;
               threads_given = true;
           },
           "worker threads (0 = all cores; default from SPINVOL_THREADS)")
        ->capture_default_str();

    SixjArgs sixj;
    auto *c_sixj = app.add_subcommand("sixj", "exact 6j symbol or a sweep over one entry");
    c_sixj->add_option("spins", sixj.spins, "j1 j2 j3 j4 j5 j6, '.' marks the swept entry")->required();
    c_sixj->add_flag("--twice", sixj.twice, "spins are given as 2j");
    c_sixj->add_option("--sweep", sixj.sweep, "name of the swept entry (table mode)");

    VerifyArgs verify;
    auto *c_verify = app.add_subcommand("verify", "check an identity exactly; JSON lines on stdout");
    c_verify->add_option("identity", verify.identity, "orthonormality | racah | triple | be")
        ->required()
        ->check(CLI::IsMember({"orthonormality", "racah", "triple", "be"}));
    c_verify->add_option("--max-twice", verify.max_twice, "largest 2j")->capture_default_str();
    c_verify->add_flag("--exhaustive", verify.exhaustive, "every tuple up to the bound");
    c_verify->add_option("--count", verify.count, "random admissible cases")->capture_default_str();
    c_verify->add_option("--seed", verify.seed, "RNG seed")->capture_default_str();

    CausticArgs caus;
    auto *c_caus = app.add_subcommand("caustics", "V² screens, caustics, ridges and the xyz shells");
    c_caus->add_option("spins", caus.spins, "a b c d")->required();
    c_caus->add_flag("--twice", caus.twice, "spins are given as 2j");
    c_caus->add_option("--screen", caus.screen, "xz | xy | yz")->capture_default_str();
    c_caus->add_flag("--all", caus.all, "all three screens plus the xyz shells");
    c_caus->add_option("-r,--resolution", caus.resolution, "grid nodes per side")->capture_default_str();
    c_caus->add_option("--shift", caus.shift, "length = label + shift")->capture_default_str();
    c_caus->add_option("--out", caus.out, "output directory")->capture_default_str();
    c_caus->add_flag("--svg", caus.svg, "also write an SVG per screen");

    VolumeArgs vol;
    auto *c_vol = app.add_subcommand("volume", "spectrum, potentials and eigenfunctions of the volume operator");
    c_vol->add_option("spins", vol.spins, "a b c d")->required();
    c_vol->add_flag("--twice", vol.twice, "spins are given as 2j");
    c_vol->add_option("--basis", vol.basis, "x | y | z")->capture_default_str();
    c_vol->add_option("--emit", vol.emit, "spectrum | potentials | eigenfunctions")->capture_default_str();
    c_vol->add_option("--shift", vol.shift, "length = label + shift (potentials)")->capture_default_str();
    c_vol->add_option("--samples", vol.samples, "potential curve samples")->capture_default_str();
    c_vol->add_flag("--oracle", vol.oracle, "compare against the dense tensor-space operator (spins <= 2)");
    c_vol->add_option("--out", vol.out, "output directory")->capture_default_str();

    std::vector<std::string> fano_spins;
    bool fano_twice = false;
    auto *c_fano = app.add_subcommand("fano", "incidence table of the seven-spin network");
    c_fano->add_option("spins", fano_spins, "a b c d")->required();
    c_fano->add_flag("--twice", fano_twice, "spins are given as 2j");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (!threads_given)
            threads = env_threads();
        verify.threads = threads;
        caus.threads = threads;
        if (c_sixj->parsed())
            return run_sixj(sixj);
        if (c_verify->parsed())
            return run_verify(verify);
        if (c_caus->parsed())
            return run_caustics(caus);
        if (c_vol->parsed())
            return run_volume(vol);
        if (c_fano->parsed())
            return run_fano(fano_spins, fano_twice);
    } catch (const std::exception &e) {
        // malformed input, closure violations, refusals and numerical failures
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
