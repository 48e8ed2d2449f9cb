#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <dpt/dpt.hpp>

namespace dpt::cli {

enum ExitCode { ok = 0, verify_failed = 1, bad_input = 2, invalid = 3, refused = 4 };

inline std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Inline JSON if the text starts like JSON, otherwise a path.
inline std::string json_or_path(const std::string& arg) {
  const auto pos = arg.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && (arg[pos] == '{' || arg[pos] == '[')) return arg;
  return read_source(arg);
}

inline std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ValidationError("list", "not a number: " + item);
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw ValidationError("list", "not a number: " + item);
    out.push_back(v);
  }
  return out;
}

inline double default_rel_tol() {
  if (const char* env = std::getenv("DPT_REL_TOL")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw ValidationError("DPT_REL_TOL", "must be a number");
    }
  }
  return 1e-9;
}

inline Species parse_species(const std::string& s) {
  if (s == "N" || s == "[N]" || s == "0") return Species::symmetric;
  if (s == "N-1,1" || s == "[N-1,1]" || s == "1") return Species::standard;
  if (s == "N-2,2" || s == "[N-2,2]" || s == "2") return Species::two_row;
  throw ValidationError("species", "one of [N], [N-1,1], [N-2,2]");
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

inline void write_motion_csv(std::ostream& os, const VectorXd& r, const VectorXd& g, int N) {
  os.precision(17);
  os << "kind,label,displacement\n";
  for (int i = 0; i < N; ++i) os << "r," << i + 1 << "," << r(i) << "\n";
  int p = 0;
  for (const auto& [i, j] : pair_list(N)) os << "gamma,\"" << pair_label(i, j) << "\"," << g(p++) << "\n";
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normal modes of S_N-symmetric N-body systems at zeroth order in 1/D"};
  app.require_subcommand(1);

  std::string spec_src, output;
  auto add_io = [&](CLI::App* sub, bool spec_required) {
    auto* o = sub->add_option("-s,--spec", spec_src, "System spec: path, '-' for stdin, or inline JSON");
    if (spec_required) o->required();
    sub->add_option("-o,--output", output, "Write output to this path");
  };

  auto* modes = app.add_subcommand("modes", "Frequencies, mixing angles and multiplicities");
  add_io(modes, true);
  bool with_vectors = false, with_tilde = false;
  modes->add_flag("--vectors", with_vectors, "Include normal-coordinate coefficient vectors");
  modes->add_flag("--tilde", with_tilde, "Include the twelve reduced block coefficients");

  auto* verify = app.add_subcommand("verify", "Check every identity against the dense oracle");
  add_io(verify, false);
  std::uint64_t seed = 0;
  int verify_N = 8;
  bool timings = false;
  double rel_tol = 0;
  verify->add_option("--seed", seed, "Seed for random draws");
  verify->add_option("--N", verify_N, "Particle count for a random spec when --spec is absent");
  verify->add_flag("--timings", timings, "Report wall time per check");
  verify->add_option("--rel-tol", rel_tol, "Relative tolerance for eigenvalue agreement");

  auto* motion = app.add_subcommand("motion", "Displacement field of a normal mode or symmetry coordinate");
  add_io(motion, true);
  std::string mode_mu, sym_species, sector = "r";
  int xi = 1;
  double q_value = 1.0, s_value = 1.0;
  bool scaled = false, absolute = false;
  auto* mode_opt = motion->add_option("--mode", mode_mu, "Root label: 0+, 0-, 1+, 1-, 2");
  auto* sym_opt = motion->add_option("--symmetry", sym_species, "Species for a symmetry-coordinate motion");
  mode_opt->excludes(sym_opt);
  motion->add_option("--xi", xi, "Row within the species (1-based)");
  motion->add_option("--q", q_value, "Normal-coordinate amplitude");
  motion->add_option("--sector", sector, "r or gamma, for --symmetry")->check(CLI::IsMember({"r", "gamma"}));
  motion->add_option("--S", s_value, "Symmetry-coordinate amplitude, for --symmetry");
  motion->add_flag("--scaled", scaled, "Emit scaled displacements");
  motion->add_flag("--absolute", absolute, "Add the Lewis structure (unscaled output only)");

  auto* energy = app.add_subcommand("energy", "Energy through first order in delta");
  add_io(energy, true);
  std::string occ_src;
  energy->add_option("--occupancy", occ_src, "JSON array of {mu, n, count}: path or inline");

  auto* phi = app.add_subcommand("phi0", "Zeroth-order wave function");
  add_io(phi, true);
  std::string q_list, grid_path, quanta_list;
  auto* qo = phi->add_option("--q", q_list, "Comma-separated normal coordinates (length P)");
  auto* go = phi->add_option("--grid", grid_path, "CSV of scaled internal displacements, one point per row");
  qo->excludes(go);
  phi->add_option("--quanta", quanta_list, "Comma-separated quanta per mode (length P)");

  auto* bench = app.add_subcommand("bench", "Analytic versus dense timing");
  std::string bench_Ns = "16,32,64,100", format = "csv";
  std::uint64_t bench_seed = 1;
  bench->add_option("--N", bench_Ns, "Comma-separated particle counts");
  bench->add_option("--seed", bench_seed, "Seed for the random specs");
  bench->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("-o,--output", output, "Write output to this path");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : bad_input;
  }

  try {
    auto load_spec = [&] { return parse_spec(json_or_path(spec_src)); };

    if (modes->parsed()) {
      const SystemSpec spec = load_spec();
      json j;
      try {
        const SpectralSolution sol = solve_spectrum(spec);
        j = modes_json(spec, sol);
        if (with_tilde) j["tilde"] = to_json(tilde_coefficients(spec), spec.N)["blocks"];
        if (with_vectors) {
          const SymmetryBasis basis = symmetry_basis(spec.N);
          const MatrixXd C = normal_coefficients(sol, basis);
          j["coefficients_symmetry"] = to_json(C);
          j["coefficients_internal"] = to_json(C * basis.full());
        }
      } catch (const UnstableStructure& e) {
        j = json{{"spec", to_json(spec)}, {"stable", false}, {"error", e.what()},
                 {"complex_lambda", {{"re", e.re}, {"im", e.im}}}};
      }
      emit(j.dump(2) + "\n", output, out);
      return ok;
    }

    if (verify->parsed()) {
      SystemSpec spec;
      if (!spec_src.empty()) {
        spec = load_spec();
      } else {
        if (verify_N < 2) throw ValidationError("N", "N >= 2");
        std::mt19937_64 rng(seed);
        spec = random_spec(verify_N, rng);
      }
      VerifyOptions opt;
      opt.seed = seed;
      opt.rel_tol = rel_tol > 0 ? rel_tol : default_rel_tol();
      const VerifyReport rep = verify_report(spec, opt);
      json j = to_json(rep, timings);
      j["spec"] = to_json(spec);
      j["seed"] = seed;
      emit(j.dump(2) + "\n", output, out);
      return rep.pass ? ok : verify_failed;
    }

    if (motion->parsed()) {
      const SystemSpec spec = load_spec();
      const SymmetryBasis basis = symmetry_basis(spec.N);
      ModeMotion m;
      std::string what;
      if (!sym_species.empty()) {
        const Species sp = parse_species(sym_species);
        m = symmetry_motion(basis, sp, sector == "r" ? Sector::radial : Sector::angular, xi, s_value, spec, scaled);
        what = std::string(species_name(sp)) + " " + sector + " xi=" + std::to_string(xi);
      } else {
        if (mode_mu.empty()) throw ValidationError("mode", "give --mode or --symmetry");
        const SpectralSolution sol = solve_spectrum(spec);
        m = normal_mode_motion(find_mode(sol, mode_mu, xi), q_value, sol, basis, spec, scaled);
        what = "mode " + mode_mu + " xi=" + std::to_string(xi);
      }
      if (absolute) {
        if (scaled) throw ValidationError("absolute", "only with unscaled output");
        const VectorXd y = lewis_structure(spec);
        m.r += y.head(spec.N);
        m.gamma += y.tail(pair_count(spec.N));
      }
      std::ostringstream os;
      os << "# " << what << (scaled ? " scaled" : "") << (absolute ? " absolute" : "") << "\n";
      os << "# spec " << to_json(spec).dump() << "\n";
      write_motion_csv(os, m.r, m.gamma, spec.N);
      emit(os.str(), output, out);
      return ok;
    }

    if (energy->parsed()) {
      const SystemSpec spec = load_spec();
      const Occupancy occ = occ_src.empty() ? Occupancy{} : occupancy_from_json(parse_json(json_or_path(occ_src)));
      SpectralSolution sol;
      try {
        sol = solve_spectrum(spec);
      } catch (const UnstableStructure& e) {
        throw UnstableMode(e.what());
      }
      const Occupancy full = complete_occupancy(sol, occ);
      json occ_j = json::array();
      for (const auto& [mu, counts] : full)
        for (const auto& [n, c] : counts) occ_j.push_back({{"mu", mu}, {"n", n}, {"count", c}});
      json j{{"spec", to_json(spec)},
             {"energy", energy_first_order(spec, sol, occ)},
             {"ground_energy", ground_state_energy(spec, sol)},
             {"occupancy", occ_j}};
      emit(j.dump(2) + "\n", output, out);
      return ok;
    }

    if (phi->parsed()) {
      const SystemSpec spec = load_spec();
      const SpectralSolution sol = solve_spectrum(spec);
      const int P = coordinate_count(spec.N);
      std::vector<int> quanta;
      for (double v : parse_list(quanta_list)) {
        if (v < 0 || v != std::floor(v)) throw ValidationError("quanta", "non-negative integers");
        quanta.push_back(int(v));
      }
      if (!quanta.empty() && int(quanta.size()) != P) throw ValidationError("quanta", "length P");
      if (!grid_path.empty()) {
        const SymmetryBasis basis = symmetry_basis(spec.N);
        std::istringstream in(read_source(grid_path));
        std::ostringstream os;
        os.precision(17);
        os << "# spec " << to_json(spec).dump() << "\n";
        os << "point,phi0,density\n";
        std::string line;
        int k = 0;
        while (std::getline(in, line)) {
          if (line.empty() || line[0] == '#') continue;
          const auto v = parse_list(line);
          if (int(v.size()) != P) throw ValidationError("grid", "each row needs P values");
          const VectorXd y = Eigen::Map<const VectorXd>(v.data(), P);
          const double f = phi0(project_internal_to_normal(y, basis, sol), sol, quanta);
          os << ++k << "," << f << "," << f * f << "\n";
        }
        emit(os.str(), output, out);
        return ok;
      }
      auto qv = parse_list(q_list);
      if (qv.empty()) qv.assign(P, 0.0);
      if (int(qv.size()) != P) throw ValidationError("q", "length P");
      const double f = phi0(Eigen::Map<const VectorXd>(qv.data(), P), sol, quanta);
      json j{{"spec", to_json(spec)}, {"phi0", f}, {"density", f * f}};
      emit(j.dump(2) + "\n", output, out);
      return ok;
    }

    if (bench->parsed()) {
      std::vector<int> Ns;
      for (double v : parse_list(bench_Ns)) {
        if (v < 2 || v != std::floor(v)) throw ValidationError("N", "integers >= 2");
        Ns.push_back(int(v));
      }
      const auto rows = run_bench(Ns, bench_seed);
      const double slope = dense_loglog_slope(rows);
      std::ostringstream os;
      if (format == "json") {
        json t = json::array();
        for (const auto& r : rows)
          t.push_back({{"N", r.N}, {"P", r.P}, {"t_analytic", r.t_analytic}, {"t_dense", r.t_dense},
                       {"speedup", r.speedup}});
        os << json{{"seed", bench_seed}, {"rows", t}, {"dense_loglog_slope", num(slope)}}.dump(2) << "\n";
      } else {
        os.precision(6);
        os << "# seed " << bench_seed << "\n";
        os << "N,P,t_analytic,t_dense,speedup\n";
        for (const auto& r : rows)
          os << r.N << "," << r.P << "," << r.t_analytic << "," << r.t_dense << "," << r.speedup << "\n";
        os << "# dense log-log slope vs P: " << slope << "\n";
      }
      emit(os.str(), output, out);
      return ok;
    }
  } catch (const MalformedInput& e) {
    err << "error: " << e.what() << "\n";
    return bad_input;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return invalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return refused;
  }
  return ok;
}

}  // namespace dpt::cli
