#include "dwscat/run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dwscat/born.hpp"
#include "dwscat/bose_hubbard.hpp"
#include "dwscat/meanfield.hpp"
#include "dwscat/scattering.hpp"

namespace dwscat::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

void RunConfig::validate() const {
    if (n_bosons.empty()) throw std::invalid_argument("config: need at least one n_bosons value");
    for (int n : n_bosons)
        if (n < 1) throw std::invalid_argument("config: n_bosons must be >= 1");
    if (!(hopping_k > 0.0)) throw std::invalid_argument("config: hopping-k must be > 0");
    if (!(gamma > 0.0) || gamma > 1.0)
        throw std::invalid_argument("config: gamma must lie in (0, 1]");
    if (!(alpha >= 0.0)) throw std::invalid_argument("config: alpha must be >= 0");
    if (!(band_fraction > 0.0) || !(band_fraction < 1.0))
        throw std::invalid_argument("config: band-fraction must lie in (0, 1)");
    if (grid_points < 1) throw std::invalid_argument("config: grid-points must be >= 1");
    if (!(margin >= 0.0)) throw std::invalid_argument("config: margin must be >= 0");
    if (!(t_final > 0.0)) throw std::invalid_argument("config: t-final must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("config: dt must be > 0");
    if (!std::isfinite(u)) throw std::invalid_argument("config: u must be finite");
    if (!std::isfinite(bias)) throw std::invalid_argument("config: bias must be finite");
    // any negative bias acts as the "use the default 0.01 k" sentinel
}

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_header(std::ofstream& out, const RunConfig& cfg, const std::string& subcommand,
                  int n_current) {
    out << "# dwscat " << subcommand << "\n";
    out << "# n_bosons = " << n_current << "\n";
    out << "# u = " << fmt(cfg.u) << "\n";
    out << "# hopping_k = " << fmt(cfg.hopping_k) << "\n";
    out << "# interaction_U = "
        << fmt(2.0 * cfg.hopping_k * cfg.u / n_current) << "\n";
    out << "# bias = " << fmt(cfg.resolved_bias()) << "\n";
    out << "# gamma = " << fmt(cfg.gamma) << "\n";
    out << "# alpha = " << fmt(cfg.alpha) << "\n";
    out << "# band_fraction = " << fmt(cfg.band_fraction) << "\n";
    out << "# grid_points = " << cfg.grid_points << "\n";
    out << "# margin = " << fmt(cfg.margin) << "\n";
    out << "# t_final = " << fmt(cfg.t_final) << "\n";
    out << "# dt = " << fmt(cfg.dt) << "\n";
    out << "# seed = " << cfg.seed << "\n";
    out << "# out_dir = " << cfg.out_dir << "\n";
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);  // fixed newlines on any platform
    if (!out) throw std::runtime_error("cannot open output file " + path.string());
    return out;
}

struct Target {
    bh::BHParams params;
    bh::EigenSystem es;
    bh::QMatrix q;
    bh::SeparatrixInfo sep;
};

Target make_target(const RunConfig& cfg, int n) {
    Target t;
    t.params = bh::BHParams::from_control(n, cfg.hopping_k, cfg.u, cfg.resolved_bias());
    t.es = bh::diagonalize(t.params);
    t.q = bh::q_matrix(t.es);
    t.sep = bh::separatrix(t.params, t.es);
    return t;
}

scattering::RescaledTarget make_rescaled(const RunConfig& cfg, const Target& t) {
    return scattering::rescale(t.es, scattering::LeadParams{1.0, cfg.gamma},
                               cfg.band_fraction);
}

}  // namespace

PathList cmd_spectrum(const RunConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.out_dir);
    PathList written;
    for (int n : cfg.n_bosons) {
        const auto t = make_target(cfg, n);
        const fs::path path = fs::path(cfg.out_dir) / ("spectrum_N" + std::to_string(n) + ".csv");
        auto out = open_output(path);
        write_header(out, cfg, "spectrum", n);
        out << "# e_sep = " << fmt(t.sep.e_sep) << "\n";
        out << "# rabi_count = " << t.sep.rabi_count << "\n";
        out << "# columns: n, energy, energy_per_particle, classification\n";
        for (std::size_t i = 0; i < t.es.dim(); ++i)
            out << i << "," << fmt(t.es.energies[i]) << "," << fmt(t.es.energies[i] / n) << ","
                << to_string(t.sep.classification[i]) << "\n";
        written.push_back(path);
    }
    return written;
}

PathList cmd_qmatrix(const RunConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.out_dir);
    PathList written;
    for (int n : cfg.n_bosons) {
        const auto t = make_target(cfg, n);
        const fs::path qpath = fs::path(cfg.out_dir) / ("q_matrix_N" + std::to_string(n) + ".csv");
        auto qout = open_output(qpath);
        write_header(qout, cfg, "qmatrix", n);
        qout << "# columns: n, m, q\n";
        for (std::size_t a = 0; a < t.es.dim(); ++a)
            for (std::size_t b = 0; b < t.es.dim(); ++b)
                qout << a << "," << b << "," << fmt(t.q.q(a, b)) << "\n";
        written.push_back(qpath);

        const fs::path dpath = fs::path(cfg.out_dir) / ("q_diag_N" + std::to_string(n) + ".csv");
        auto dout = open_output(dpath);
        write_header(dout, cfg, "qmatrix", n);
        dout << "# e_sep = " << fmt(t.sep.e_sep) << "\n";
        dout << "# columns: n, q_nn, sigma_n, classification\n";
        for (std::size_t i = 0; i < t.es.dim(); ++i)
            dout << i << "," << fmt(t.q.diag_expectation[i]) << "," << fmt(t.q.std_dev[i]) << ","
                 << to_string(t.sep.classification[i]) << "\n";
        written.push_back(dpath);
    }
    return written;
}

PathList cmd_phasespace(const RunConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.out_dir);
    const mf::MFParams p{cfg.u, cfg.hopping_k};

    // Deterministic set of initial states: fixed points, a near-separatrix
    // probe, a jz ladder on both hemispheres of the jy = 0 circle, and a few
    // seeded random states.
    std::vector<mf::BlochState> ics = mf::fixed_points(p);
    if (cfg.u > 1.0) {
        // Hugging the separatrix: the finite-time average of jz stays below
        // the self-trapping threshold while the energy sits above it.
        const double jz = 1e-5;
        ics.push_back({-std::sqrt(0.25 - jz * jz), 0.0, jz});
    }
    for (int i = 0; i < 16; ++i) {
        const double jz = -0.45 + 0.9 * i / 15.0;
        ics.push_back({std::sqrt(0.25 - jz * jz), 0.0, jz});
    }
    if (cfg.u > 1.0)
        for (double jz : {-0.45, -0.35, -0.25, -0.15, 0.15, 0.25, 0.35, 0.45})
            ics.push_back({-std::sqrt(0.25 - jz * jz), 0.0, jz});
    std::mt19937 rng(cfg.seed);
    std::normal_distribution<double> gauss;
    for (int i = 0; i < 8; ++i) {
        double x = gauss(rng), y = gauss(rng), z = gauss(rng);
        const double r = std::sqrt(x * x + y * y + z * z);
        ics.push_back({0.5 * x / r, 0.5 * y / r, 0.5 * z / r});
    }

    mf::IntegrateOptions opt;
    opt.t_final = cfg.t_final;
    opt.dt = cfg.dt;
    const auto steps = static_cast<std::size_t>(std::llround(cfg.t_final / cfg.dt));
    opt.store_stride = std::max<std::size_t>(1, steps / 2000);

    PathList written;
    const fs::path spath = fs::path(cfg.out_dir) / "phasespace_summary.csv";
    auto sum = open_output(spath);
    write_header(sum, cfg, "phasespace", cfg.n_bosons.front());
    sum << "# e_sep_per_particle = " << fmt(mf::separatrix_energy_per_particle(p)) << "\n";
    sum << "# columns: index, jx0, jy0, jz0, energy_per_particle, avg_jz, tag\n";

    for (std::size_t i = 0; i < ics.size(); ++i) {
        auto tr = mf::integrate(ics[i], p, opt);
        tr.tag = mf::classify(tr, p);

        char name[48];
        std::snprintf(name, sizeof name, "phasespace_%03zu.csv", i);
        const fs::path tpath = fs::path(cfg.out_dir) / name;
        auto out = open_output(tpath);
        write_header(out, cfg, "phasespace", cfg.n_bosons.front());
        out << "# ic = " << fmt(ics[i].jx) << "," << fmt(ics[i].jy) << "," << fmt(ics[i].jz)
            << "\n";
        out << "# columns: time, jx, jy, jz, tag\n";
        for (std::size_t s = 0; s < tr.states.size(); ++s)
            out << fmt(tr.time[s]) << "," << fmt(tr.states[s].jx) << "," << fmt(tr.states[s].jy)
                << "," << fmt(tr.states[s].jz) << "," << to_string(tr.tag) << "\n";
        written.push_back(tpath);

        sum << i << "," << fmt(ics[i].jx) << "," << fmt(ics[i].jy) << "," << fmt(ics[i].jz) << ","
            << fmt(tr.energy.front()) << "," << fmt(tr.avg_jz) << "," << to_string(tr.tag)
            << "\n";
    }
    written.push_back(spath);
    return written;
}

PathList cmd_sweep(const RunConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.out_dir);
    PathList written;
    for (int n : cfg.n_bosons) {
        const auto t = make_target(cfg, n);
        const auto rt = make_rescaled(cfg, t);
        const auto grid = scattering::default_grid(rt, cfg.margin, cfg.grid_points);
        const bool with_pn = cfg.alpha > 0.0;
        const auto sw = scattering::sweep(rt, t.q, cfg.alpha, grid, with_pn);

        const fs::path path = fs::path(cfg.out_dir) / ("sweep_N" + std::to_string(n) + ".csv");
        auto out = open_output(path);
        write_header(out, cfg, "sweep", n);
        out << "# scale_s = " << fmt(rt.scale) << "\n";
        out << "# window = " << fmt(grid.lo) << "," << fmt(grid.hi) << "\n";
        out << "# columns: energy, m, rho_in, pn\n";
        for (int i = 0; i < grid.points; ++i)
            for (std::size_t m = 0; m < sw.channels; ++m)
                out << fmt(sw.energies[i]) << "," << m << "," << fmt(sw.rho_at(m, i)) << ","
                    << (with_pn ? fmt(sw.pn_at(m, i)) : "nan") << "\n";
        written.push_back(path);

        json summary;
        summary["subcommand"] = "sweep";
        summary["n_bosons"] = n;
        summary["u"] = cfg.u;
        summary["gamma"] = cfg.gamma;
        summary["alpha"] = cfg.alpha;
        summary["band_fraction"] = cfg.band_fraction;
        summary["scale_s"] = rt.scale;
        summary["grid_points"] = grid.points;
        summary["window"] = {grid.lo, grid.hi};
        json chans = json::array();
        for (std::size_t m = 0; m < sw.channels; ++m) {
            json c;
            c["m"] = m;
            c["scaled_level"] = rt.energies[m];
            c["resonance_energy"] = sw.resonance_energy[m];
            c["peak_rho_in"] = sw.peak_rho[m];
            if (with_pn) c["pn_avg"] = sw.pn_avg[m];
            chans.push_back(c);
        }
        summary["channels"] = chans;
        const fs::path jpath =
            fs::path(cfg.out_dir) / ("sweep_N" + std::to_string(n) + "_summary.json");
        auto jout = open_output(jpath);
        jout << summary.dump(2) << "\n";
        written.push_back(jpath);
    }
    return written;
}

PathList cmd_pn(const RunConfig& cfg) {
    cfg.validate();
    if (!(cfg.alpha > 0.0))
        throw std::invalid_argument(
            "pn: participation numbers are undefined for alpha = 0 (elastic scattering only)");
    fs::create_directories(cfg.out_dir);
    PathList written;
    for (int n : cfg.n_bosons) {
        const auto t = make_target(cfg, n);
        const auto rt = make_rescaled(cfg, t);
        const auto grid = scattering::default_grid(rt, cfg.margin, cfg.grid_points);
        const auto sw = scattering::sweep(rt, t.q, cfg.alpha, grid);

        const fs::path path = fs::path(cfg.out_dir) / ("pn_N" + std::to_string(n) + ".csv");
        auto out = open_output(path);
        write_header(out, cfg, "pn", n);
        out << "# columns: m, m_over_N, pn_avg\n";
        for (std::size_t m = 0; m < sw.channels; ++m)
            out << m << "," << fmt(double(m) / n) << "," << fmt(sw.pn_avg[m]) << "\n";
        written.push_back(path);
    }
    return written;
}

PathList cmd_born(const RunConfig& cfg) {
    cfg.validate();
    if (!(cfg.alpha > 0.0))
        throw std::invalid_argument("born: alpha must be > 0 for the Born comparison");
    fs::create_directories(cfg.out_dir);
    PathList written;
    for (int n : cfg.n_bosons) {
        const auto t = make_target(cfg, n);
        const auto rt = make_rescaled(cfg, t);
        const auto grid = scattering::default_grid(rt, cfg.margin, cfg.grid_points);
        std::vector<double> alphas;
        for (double f : {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0}) alphas.push_back(f * cfg.alpha);
        const auto rows = born::born_report(rt, t.q, alphas, grid);

        const fs::path path = fs::path(cfg.out_dir) / ("born_N" + std::to_string(n) + ".csv");
        auto out = open_output(path);
        write_header(out, cfg, "born", n);
        out << "# scale_s = " << fmt(rt.scale) << "\n";
        out << "# columns: alpha, scaled_alpha, m, resonance_energy, rho_exact, rho_born_full, "
               "rho_born_simplified, rel_err_full, rel_err_simplified, a_max\n";
        for (const auto& r : rows)
            out << fmt(r.alpha) << "," << fmt(r.scaled_alpha) << "," << r.channel << ","
                << fmt(r.resonance_energy) << "," << fmt(r.rho_exact) << "," << fmt(r.rho_full)
                << "," << fmt(r.rho_simplified) << "," << fmt(r.rel_err_full) << ","
                << fmt(r.rel_err_simplified) << "," << fmt(r.a_max) << "\n";
        written.push_back(path);
    }
    return written;
}

}  // namespace dwscat::cli
