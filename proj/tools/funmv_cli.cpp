// funmv command-line tool.
//
// Subcommands:
//   compute    C = cos/cosh(tA^sigma)B and S = sin/sinh/sinc/sinch(tA^sigma)B
//   params     parameter selection (m*, s) for a matrix, as JSON
//   theta      theta_m table for a tolerance, as CSV
//   integrate  trigonometric integrator for y'' + Ay = 0
//   bench      matvec counts / wall time / error vs oracle on generator cases
//   gen        write generator matrices and b vectors as Matrix Market files
//
// Exit codes: 0 ok, 2 input error, 3 numerical failure.
// Env: FUNMV_SEED overrides the norm-estimator seed (default 0).

#include <chrono>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "funmv/funmv.hpp"
#include "funmv/generators.hpp"
#include "funmv/integrator.hpp"
#include "funmv/mm_io.hpp"
#ifdef FUNMV_HAVE_ORACLE
#include "funmv/oracle.hpp"
#endif

using json = nlohmann::json;
using cdouble = std::complex<double>;

namespace {

unsigned env_seed() {
    if (const char* s = std::getenv("FUNMV_SEED")) return static_cast<unsigned>(std::strtoul(s, nullptr, 10));
    return 0;
}

/// Accepts "re" or "re,im".
cdouble parse_scalar(const std::string& s) {
    std::size_t pos = 0;
    double re = 0, im = 0;
    try {
        re = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw funmv::input_error("cannot parse scalar '" + s + "'");
    }
    if (pos < s.size()) {
        if (s[pos] != ',') throw funmv::input_error("cannot parse scalar '" + s + "' (expected re or re,im)");
        try {
            im = std::stod(s.substr(pos + 1));
        } catch (const std::exception&) {
            throw funmv::input_error("cannot parse scalar '" + s + "'");
        }
    }
    return {re, im};
}

funmv::SparseMatrix<double> load_matrix_arg(const std::string& matrix_file, const std::string& gen_descr) {
    if (!gen_descr.empty()) return funmv::make_generator(gen_descr);
    if (matrix_file.empty()) throw funmv::input_error("provide --matrix or --gen");
    return funmv::load_sparse<double>(matrix_file);
}

template <class T>
json report_to_json(const funmv::FunmvReport<T>& rep) {
    json j;
    j["option"] = rep.option;
    j["matvecs"] = rep.matvecs;
    j["m_star"] = rep.m_star;
    j["s"] = rep.s;
    j["m_i"] = rep.m_i;
    j["mu"] = {funmv::real_part(rep.mu), funmv::imag_part(rep.mu)};
    j["undo"] = funmv::to_string(rep.undo);
    j["path"] = funmv::to_string(rep.path);
    j["theta_cost"] = rep.theta_cost;
    return j;
}

json spm_to_json(const funmv::SpmMatrix& s) {
    json j;
    j["sigma"] = s.sigma;
    j["tol"] = s.tol;
    j["mmax"] = s.mmax;
    j["pmax"] = s.pmax;
    j["entries"] = s.entries;
    j["theta_cost"] = s.theta_cost;
    return j;
}

funmv::SpmMatrix spm_from_json(const json& j) {
    funmv::SpmMatrix s;
    s.sigma = j.at("sigma").get<double>();
    s.tol = j.at("tol").get<double>();
    s.mmax = j.at("mmax").get<int>();
    s.pmax = j.at("pmax").get<int>();
    s.entries = j.at("entries").get<std::vector<double>>();
    s.theta_cost = j.at("theta_cost").get<long long>();
    if (s.entries.size() != static_cast<std::size_t>((s.pmax - 1) * s.mmax))
        throw funmv::input_error("spm cache: entry count does not match pmax/mmax");
    return s;
}

struct ComputeArgs {
    std::string matrix_file, gen_descr, block_file, b_name = "ones";
    std::string t_str = "1";
    int option = 1;
    std::string tol_str = "double";
    bool no_early_stop = false;
    std::string spm_file, out_c, out_s, stats_file;
};

template <class T>
void run_compute_typed(const ComputeArgs& args, const funmv::SparseMatrix<T>& a, const funmv::DenseBlock<T>& b, T t) {
    const double tol = funmv::parse_tol(args.tol_str);
    const auto opt = funmv::FunmvOption::from_id(args.option);

    funmv::FunmvConfig cfg;
    cfg.select.seed = env_seed();
    cfg.early_stop = !args.no_early_stop;

    funmv::SpmMatrix spm;
    long long spm_build_cost = 0;
    if (!args.spm_file.empty()) {
        std::ifstream in(args.spm_file);
        if (in) {
            json j;
            in >> j;
            spm = spm_from_json(j);
            if (spm.sigma != opt.sigma || spm.tol != tol)
                throw funmv::input_error("spm cache: sigma/tol mismatch with this run");
        } else {
            funmv::MatvecCounter build;
            spm = funmv::build_spm(a, opt.sigma, tol, cfg.select, build);
            spm_build_cost = build.count;
            std::ofstream out(args.spm_file);
            if (!out) throw funmv::input_error("cannot write '" + args.spm_file + "'");
            out << spm_to_json(spm) << "\n";
        }
        cfg.spm = &spm;
    }

    const auto rep = funmv::funmv(t, a, b, tol, opt, cfg);

    if (!args.out_c.empty()) funmv::save_dense(args.out_c, rep.C);
    if (!args.out_s.empty()) funmv::save_dense(args.out_s, rep.S);
    json stats = report_to_json(rep);
    stats["tol"] = tol;
    if (!args.spm_file.empty()) stats["spm_build_cost"] = spm_build_cost;
    if (!args.stats_file.empty()) {
        std::ofstream out(args.stats_file);
        if (!out) throw funmv::input_error("cannot write '" + args.stats_file + "'");
        out << stats.dump(2) << "\n";
    }
    std::cout << stats.dump(2) << "\n";
}

void run_compute(const ComputeArgs& args) {
    const cdouble t = parse_scalar(args.t_str);
    bool complex_input = t.imag() != 0;
    if (!args.matrix_file.empty() && funmv::peek_mm_header(args.matrix_file).complex_field) complex_input = true;
    if (!args.block_file.empty() && funmv::peek_mm_header(args.block_file).complex_field) complex_input = true;

    if (complex_input) {
        funmv::SparseMatrix<cdouble> a;
        if (!args.gen_descr.empty())
            a = funmv::promote_complex(funmv::make_generator(args.gen_descr));
        else if (!args.matrix_file.empty())
            a = funmv::load_sparse<cdouble>(args.matrix_file);
        else
            throw funmv::input_error("provide --matrix or --gen");
        funmv::DenseBlock<cdouble> b = args.block_file.empty()
                                           ? funmv::promote_complex(funmv::DenseBlock<double>::from_column(
                                                 funmv::make_b_vector(args.b_name, a.n)))
                                           : funmv::load_dense<cdouble>(args.block_file);
        run_compute_typed<cdouble>(args, a, b, t);
    } else {
        funmv::SparseMatrix<double> a = load_matrix_arg(args.matrix_file, args.gen_descr);
        funmv::DenseBlock<double> b =
            args.block_file.empty()
                ? funmv::DenseBlock<double>::from_column(funmv::make_b_vector(args.b_name, a.n))
                : funmv::load_dense<double>(args.block_file);
        run_compute_typed<double>(args, a, b, t.real());
    }
}

void run_params(const std::string& matrix_file, const std::string& gen_descr, double sigma, const std::string& tol_str,
                funmv::index_t n0, int mmax, int pmax) {
    if (sigma != 1.0 && sigma != 0.5) throw funmv::input_error("--sigma must be 1 or 0.5");
    const auto a = load_matrix_arg(matrix_file, gen_descr);
    funmv::SelectConfig cfg;
    cfg.mmax = mmax;
    cfg.pmax = pmax;
    cfg.seed = env_seed();
    funmv::MatvecCounter counter;
    const auto choice = funmv::select_parameters(a, sigma, funmv::parse_tol(tol_str), n0, cfg, counter);
    json j;
    j["m_star"] = choice.m_star;
    j["s"] = choice.s;
    j["theta_cost"] = choice.theta_cost;
    j["path"] = funmv::to_string(choice.path);
    std::cout << j.dump(2) << "\n";
}

void run_theta(const std::string& tol_str, int mmax) {
    const auto table = funmv::make_theta_table(funmv::parse_tol(tol_str), mmax);
    std::cout << "m,theta\n";
    std::cout.precision(17);
    for (int m = 1; m <= table.mmax(); ++m) std::cout << m << "," << table.at(m) << "\n";
}

void run_integrate(const std::string& matrix_file, const std::string& gen_descr, const std::string& y0_file,
                   const std::string& yp0_file, double h, int steps, const std::string& filter_name,
                   const std::string& tol_str, bool negate, bool no_spm_cache, const std::string& out_file) {
    auto a = load_matrix_arg(matrix_file, gen_descr);
    if (negate) a = a.scaled(-1.0);
    std::vector<double> y0 = y0_file.empty() ? funmv::make_b_vector("ones", a.n)
                                             : funmv::load_dense<double>(y0_file).column(0);
    std::vector<double> yp0 = yp0_file.empty() ? std::vector<double>(static_cast<std::size_t>(a.n), 0.0)
                                               : funmv::load_dense<double>(yp0_file).column(0);
    funmv::FilterSpec filter;
    if (filter_name == "none")
        filter = funmv::FilterSpec::none();
    else if (filter_name == "hairer-lubich")
        filter = funmv::FilterSpec::hairer_lubich();
    else if (filter_name == "grimm-hochbruck")
        filter = funmv::FilterSpec::grimm_hochbruck();
    else
        throw funmv::input_error("--filter must be none, hairer-lubich, or grimm-hochbruck");

    funmv::FunmvConfig cfg;
    cfg.select.seed = env_seed();
    const auto traj = funmv::run(a, y0, yp0, funmv::Force{}, filter, h, steps, funmv::parse_tol(tol_str),
                                 !no_spm_cache, cfg);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_file.empty()) {
        file.open(out_file);
        if (!file) throw funmv::input_error("cannot write '" + out_file + "'");
        out = &file;
    }
    out->precision(17);
    *out << "step,t,matvecs";
    for (funmv::index_t i = 0; i < a.n; ++i) *out << ",y" << i;
    for (funmv::index_t i = 0; i < a.n; ++i) *out << ",yp" << i;
    *out << "\n";
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const auto& st = traj.states[k];
        *out << k << "," << st.t_now << "," << st.matvecs;
        for (double v : st.y) *out << "," << v;
        for (double v : st.y_prime) *out << "," << v;
        *out << "\n";
    }
    std::cerr << "total matvecs: " << traj.matvecs << " (estimation paid once: " << traj.spm_build_cost << ")\n";
}

void run_bench(const std::string& matrix_file, const std::string& gen_descr, const std::string& b_name,
               const std::string& t_str, const std::string& tol_str, int option, int repeats) {
    const auto a = load_matrix_arg(matrix_file, gen_descr);
    const auto b = funmv::DenseBlock<double>::from_column(funmv::make_b_vector(b_name, a.n));
    const double t = parse_scalar(t_str).real();
    const double tol = funmv::parse_tol(tol_str);
    const auto opt = funmv::FunmvOption::from_id(option);

    funmv::FunmvConfig cfg;
    cfg.select.seed = env_seed();

    funmv::FunmvReport<double> rep;
    double best_time = 0;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        rep = funmv::funmv(t, a, b, tol, opt, cfg);
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r == 0 || dt < best_time) best_time = dt;
    }

    json j = report_to_json(rep);
    j["case"] = gen_descr.empty() ? matrix_file : gen_descr;
    j["n"] = a.n;
    j["wall_time_s"] = best_time;

#ifdef FUNMV_HAVE_ORACLE
    std::optional<funmv::oracle::OracleResult<double>> ref;
    try {
        if (gen_descr.rfind("poisson:", 0) == 0) {
            const funmv::index_t k = static_cast<funmv::index_t>(std::llround(std::sqrt(static_cast<double>(a.n))));
            ref = funmv::oracle::poisson_pair(option, t, k, b);
        } else if (a.n <= 16384) {
            ref = funmv::oracle::symmetric_pair(option, t, a, b);
        }
        if (!ref && a.n <= 512) ref = funmv::oracle::general_pair<double>(option, t, a, b);
    } catch (const funmv::input_error&) {
        if (a.n <= 512) ref = funmv::oracle::general_pair<double>(option, t, a, b);
    }
    if (ref) {
        const auto rel = [](const funmv::DenseBlock<double>& got, const funmv::DenseBlock<double>& want) {
            const auto diff = funmv::lincomb(1.0, got, -1.0, want);
            const double d = funmv::one_norm_block(diff);
            const double w = funmv::one_norm_block(want);
            return w == 0 ? d : d / w;
        };
        j["error_c"] = rel(rep.C, ref->C);
        j["error_s"] = rel(rep.S, ref->S);
    }
#endif
    std::cout << j.dump(2) << "\n";
}

void run_gen(const std::string& gen_descr, const std::string& out_file, const std::string& b_name,
             const std::string& out_b_file) {
    const auto a = funmv::make_generator(gen_descr);
    if (!out_file.empty()) funmv::save_sparse(out_file, a);
    if (!out_b_file.empty())
        funmv::save_dense(out_b_file, funmv::DenseBlock<double>::from_column(funmv::make_b_vector(b_name, a.n)));
    if (out_file.empty() && out_b_file.empty()) funmv::write_sparse(std::cout, a);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"actions of trigonometric and hyperbolic matrix functions"};
    app.require_subcommand(1);

    ComputeArgs cargs;
    auto* compute = app.add_subcommand("compute", "compute C and S for one option");
    compute->add_option("--matrix", cargs.matrix_file, "Matrix Market file for A");
    compute->add_option("--gen", cargs.gen_descr, "generator instead of a file (poisson:k, triw:n:c, diag:n)");
    compute->add_option("--block", cargs.block_file, "Matrix Market array file for B");
    compute->add_option("--b", cargs.b_name, "built-in b vector when --block is absent (cos, ones, e1en)");
    compute->add_option("--t", cargs.t_str, "scalar t, re or re,im");
    compute->add_option("--option", cargs.option, "option id 1..6")->check(CLI::Range(1, 6));
    compute->add_option("--tol", cargs.tol_str, "half | single | double | float literal");
    compute->add_flag("--no-early-stop", cargs.no_early_stop, "disable the early series break");
    compute->add_option("--spm", cargs.spm_file, "ratio-matrix cache file (loaded if present, else built and saved)");
    compute->add_option("--out-c", cargs.out_c, "write C as Matrix Market array");
    compute->add_option("--out-s", cargs.out_s, "write S as Matrix Market array");
    compute->add_option("--stats", cargs.stats_file, "write the run report as JSON");

    std::string p_matrix, p_gen, p_tol = "double";
    double p_sigma = 1.0;
    funmv::index_t p_n0 = 1;
    int p_mmax = 25, p_pmax = 5;
    auto* params = app.add_subcommand("params", "parameter selection only");
    params->add_option("--matrix", p_matrix, "Matrix Market file for A");
    params->add_option("--gen", p_gen, "generator instead of a file");
    params->add_option("--sigma", p_sigma, "1 or 0.5");
    params->add_option("--tol", p_tol, "tolerance");
    params->add_option("--n0", p_n0, "block column count the caller will propagate");
    params->add_option("--mmax", p_mmax, "max Taylor degree");
    params->add_option("--pmax", p_pmax, "max alpha index");

    std::string t_tol = "double";
    int t_mmax = 25;
    auto* theta = app.add_subcommand("theta", "emit the theta table as CSV");
    theta->add_option("--tol", t_tol, "tolerance");
    theta->add_option("--mmax", t_mmax, "table length")->check(CLI::Range(1, 60));

    std::string i_matrix, i_gen, i_y0, i_yp0, i_filter = "none", i_tol = "double", i_out;
    double i_h = 0.1;
    int i_steps = 10;
    bool i_no_cache = false, i_negate = false;
    auto* integrate = app.add_subcommand("integrate", "trigonometric integrator, y'' + Ay = 0");
    integrate->set_help_flag("--help", "print help"); // frees -h for the step size below
    integrate->add_option("--matrix", i_matrix, "Matrix Market file for A (positive semidefinite for stable waves)");
    integrate->add_option("--gen", i_gen, "generator instead of a file");
    integrate->add_flag("--negate", i_negate, "use -A (turns the negated Laplacian generators into wave operators)");
    integrate->add_option("--y0", i_y0, "initial position (Matrix Market array; default ones)");
    integrate->add_option("--yp0", i_yp0, "initial velocity (default zero)");
    integrate->add_option("--h", i_h, "step size")->check(CLI::PositiveNumber);
    integrate->add_option("--steps", i_steps, "number of steps")->check(CLI::NonNegativeNumber);
    integrate->add_option("--filter", i_filter, "none | hairer-lubich | grimm-hochbruck");
    integrate->add_option("--tol", i_tol, "tolerance");
    integrate->add_flag("--no-spm-cache", i_no_cache, "re-run parameter estimation every step");
    integrate->add_option("--out", i_out, "trajectory CSV (default stdout)");

    std::string b_matrix, b_gen, b_b = "cos", b_t = "1", b_tol = "double";
    int b_option = 1, b_repeats = 1;
    auto* bench = app.add_subcommand("bench", "matvec count, wall time, and error vs oracle");
    bench->add_option("--matrix", b_matrix, "Matrix Market file for A");
    bench->add_option("--gen", b_gen, "generator case (poisson:k, triw:n:c, diag:n)");
    bench->add_option("--b", b_b, "b vector (cos, ones, e1en)");
    bench->add_option("--t", b_t, "scalar t");
    bench->add_option("--tol", b_tol, "tolerance");
    bench->add_option("--option", b_option, "option id 1..6")->check(CLI::Range(1, 6));
    bench->add_option("--repeats", b_repeats, "timing repeats, best-of")->check(CLI::PositiveNumber);

    std::string g_descr, g_out, g_b = "ones", g_out_b;
    auto* gen = app.add_subcommand("gen", "write generator matrices");
    gen->add_option("--gen", g_descr, "poisson:k, triw:n:c, or diag:n")->required();
    gen->add_option("--out", g_out, "output .mtx (default stdout)");
    gen->add_option("--b", g_b, "b vector to write alongside");
    gen->add_option("--out-b", g_out_b, "output .mtx for the b vector");

    try {
        app.parse(argc, argv);
        if (*compute) run_compute(cargs);
        if (*params) run_params(p_matrix, p_gen, p_sigma, p_tol, p_n0, p_mmax, p_pmax);
        if (*theta) run_theta(t_tol, t_mmax);
        if (*integrate)
            run_integrate(i_matrix, i_gen, i_y0, i_yp0, i_h, i_steps, i_filter, i_tol, i_negate, i_no_cache, i_out);
        if (*bench) run_bench(b_matrix, b_gen, b_b, b_t, b_tol, b_option, b_repeats);
        if (*gen) run_gen(g_descr, g_out, g_b, g_out_b);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const funmv::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const funmv::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
