#include "idstat/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "idstat/canonical_json.hpp"
#include "idstat/error.hpp"
#include "idstat/observables.hpp"
#include "idstat/statmech.hpp"
#include "idstat/symmetry.hpp"
#include "idstat/verify.hpp"

namespace idstat::cli {

std::optional<std::string> process_env(const std::string& name) {
  const char* value = std::getenv(name.c_str());
  if (value == nullptr) return std::nullopt;
  return std::string(value);
}

namespace {

using nlohmann::json;

// What a subcommand hands back for printing.
struct Report {
  json data;
  std::vector<std::string> header;            // tabular commands only
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> pretty;            // overrides the generic pretty form
  int exit_code = kExitOk;
};

std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, sep)) {
    cell.erase(0, cell.find_first_not_of(" \t"));
    cell.erase(cell.find_last_not_of(" \t") + 1);
    out.push_back(cell);
  }
  return out;
}

std::string trim(std::string s) {
  s.erase(0, s.find_first_not_of(" \t\r\n"));
  s.erase(s.find_last_not_of(" \t\r\n") + 1);
  return s;
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw InvalidInput(what + " must be an integer, got '" + text + "'");
}

std::optional<double> try_number(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

// Level labels: single letters a..z (exact mode) or numbers (thermodynamic mode).
struct LevelList {
  bool symbolic = true;
  std::vector<int> symbols;
  std::vector<double> numbers;
};

LevelList parse_levels(const std::string& text) {
  LevelList out;
  bool any_symbol = false;
  bool any_number = false;
  for (const auto& token : split(text)) {
    if (token.size() == 1 && token[0] >= 'a' && token[0] <= 'z') {
      any_symbol = true;
      out.symbols.push_back(token[0] - 'a');
    } else if (auto v = try_number(token)) {
      any_number = true;
      out.numbers.push_back(*v);
    } else {
      throw InvalidInput("level label '" + token + "' is neither a letter a..z nor a number");
    }
  }
  if (any_symbol && any_number) throw InvalidInput("level labels mix symbols and numbers");
  if (!any_symbol && !any_number) throw InvalidInput("empty level list");
  out.symbolic = any_symbol;
  return out;
}

ProductState symbolic_state(const std::string& text) {
  const auto levels = parse_levels(text);
  if (!levels.symbolic) throw InvalidInput("state levels must be symbols a..z, got numbers");
  return ProductState{levels.symbols};
}

std::vector<double> numeric_levels(const std::string& text) {
  const auto levels = parse_levels(text);
  if (levels.symbolic) throw InvalidInput("energies must be numbers, got symbols");
  return levels.numbers;
}

std::vector<Rational> rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& token : split(text)) {
    try {
      out.push_back(Rational::parse(token));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw InvalidInput("'" + token + "' is not a rational number");
    }
  }
  return out;
}

std::string state_label(const ProductState& s) {
  std::string out;
  for (std::size_t k = 0; k < s.levels.size(); ++k) {
    if (k > 0) out += ",";
    out += static_cast<char>('a' + s.levels[k]);
  }
  return out;
}

json exact_value(const RadicalRational& x) { return {{"exact", x.to_string()}, {"float", x.to_double()}}; }

std::vector<std::string> pretty_vector(const StateVector& v) {
  std::vector<std::string> lines;
  for (const auto& [s, c] : v.amplitudes()) lines.push_back("  " + c.to_string() + "  |" + state_label(s) + ">");
  if (lines.empty()) lines.emplace_back("  0");
  return lines;
}

int parity_index(const std::string& p) {
  if (p == "S") return 0;
  if (p == "A") return 1;
  throw InvalidInput("parity must be S or A, got '" + p + "'");
}

void check_particle_cap(int n, const RunConfig& config) {
  if (n > config.max_N) {
    throw CapacityExceeded("N = " + std::to_string(n) + " exceeds max_N = " + std::to_string(config.max_N));
  }
}

void check_level_cap(int levels, const RunConfig& config) {
  if (levels > config.max_levels) {
    throw CapacityExceeded(std::to_string(levels) + " levels exceed max_levels = " + std::to_string(config.max_levels));
  }
}

const std::array<std::string, 6> kBasisNames{"psi_S", "psi_A", "s1", "s2", "s1p", "s2p"};

// Named N = 3 vector (or S/A/product for any N) over the given levels.
StateVector named_vector(const std::string& name, const ProductState& levels, const RunConfig& config) {
  check_particle_cap(levels.size(), config);
  if (name == "product") return product_state_vector(levels);
  if (name == "S" || name == "A") {
    const auto r = symmetrize(levels, name == "S" ? Parity::Symmetric : Parity::Antisymmetric);
    if (r.zero_vector) throw InvalidInput("the " + name + " combination of these levels is the zero vector");
    return r.vector;
  }
  for (std::size_t k = 2; k < kBasisNames.size(); ++k) {
    if (name == kBasisNames[k]) return full_basis_n3(levels)[k];
  }
  throw InvalidInput("unknown vector '" + name + "' (product, S, A, s1, s2, s1p, s2p)");
}

StateVector read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
  try {
    return state_vector_from_json(j.contains("vector") ? j["vector"] : j);
  } catch (const json::exception& e) {
    throw InvalidInput("'" + path + "' is not a state vector: " + e.what());
  }
}

Units units_for(const RunConfig& config, double mass) {
  return config.mode == "si" ? Units::si(mass) : Units{1.0, 1.0, mass};
}

// ---- subcommands -----------------------------------------------------------

struct SymmetrizeArgs {
  int n = 0;
  std::string levels;
  std::string parity = "S";
  bool raw = false;
};

Report cmd_symmetrize(const SymmetrizeArgs& a, const RunConfig& config) {
  const auto s = symbolic_state(a.levels);
  if (a.n != 0 && a.n != s.size()) {
    throw InvalidInput("-n " + std::to_string(a.n) + " does not match " + std::to_string(s.size()) + " levels");
  }
  check_particle_cap(s.size(), config);
  const Parity parity = parity_index(a.parity) == 0 ? Parity::Symmetric : Parity::Antisymmetric;
  const auto r = symmetrize(s, parity);
  const StateVector v = a.raw ? symmetrize_raw(s, parity) : r.vector;
  Report rep;
  rep.data = {{"n", s.size()},
              {"levels", state_label(s)},
              {"parity", a.parity},
              {"renormalized", !a.raw},
              {"vector", to_json(v)},
              {"norm2", exact_value(v.norm2())},
              {"raw_norm2", exact_value(r.raw_norm2)},
              {"zero_vector", r.zero_vector}};
  rep.pretty.push_back("psi^" + a.parity + "(" + state_label(s) + ")" + (r.zero_vector ? "  [zero vector]" : ""));
  for (auto& line : pretty_vector(v)) rep.pretty.push_back(line);
  rep.pretty.push_back("norm^2 = " + v.norm2().to_string() + "  (raw " + r.raw_norm2.to_string() + ")");
  rep.header = {"state", "amplitude_exact", "amplitude_float"};
  for (const auto& [st, c] : v.amplitudes()) rep.rows.push_back({state_label(st), c.to_string(), format_double(c.to_double())});
  return rep;
}

Report cmd_mixed_basis(const std::string& levels) {
  const auto s = symbolic_state(levels);
  const auto basis = full_basis_n3(s);
  Report rep;
  json vectors = json::object();
  rep.header = {"vector", "state", "amplitude_exact", "amplitude_float"};
  for (std::size_t k = 0; k < basis.size(); ++k) {
    vectors[kBasisNames[k]] = to_json(basis[k]);
    rep.pretty.push_back(kBasisNames[k] + ":");
    for (auto& line : pretty_vector(basis[k])) rep.pretty.push_back(line);
    for (const auto& [st, c] : basis[k].amplitudes()) {
      rep.rows.push_back({kBasisNames[k], state_label(st), c.to_string(), format_double(c.to_double())});
    }
  }
  rep.data = {{"levels", state_label(s)}, {"vectors", vectors}};
  return rep;
}

Report cmd_decompose(const std::string& levels, const std::string& state, const std::string& input,
                     const RunConfig& config) {
  const auto base = symbolic_state(levels);
  if (state.empty() == input.empty()) throw InvalidInput("decompose needs exactly one of --state or --input");
  const StateVector v = input.empty() ? product_state_vector(symbolic_state(state)) : read_state_file(input);
  check_particle_cap(v.n_particles(), config);
  const auto basis = full_basis_n3(base);
  const auto d = decompose(v, {basis.begin(), basis.end()});
  Report rep;
  json coefficients = json::object();
  rep.header = {"vector", "coefficient_exact", "coefficient_float"};
  for (std::size_t k = 0; k < basis.size(); ++k) {
    coefficients[kBasisNames[k]] = exact_value(d.coefficients[k]);
    rep.rows.push_back({kBasisNames[k], d.coefficients[k].to_string(), format_double(d.coefficients[k].to_double())});
    rep.pretty.push_back(kBasisNames[k] + " : " + d.coefficients[k].to_string());
  }
  rep.pretty.push_back(std::string("residual: ") + (d.residual.is_zero() ? "0" : "nonzero"));
  rep.data = {{"basis_levels", state_label(base)},
              {"coefficients", coefficients},
              {"residual", to_json(d.residual)},
              {"residual_zero", d.residual.is_zero()}};
  return rep;
}

Report cmd_classify(const std::string& input, const std::string& levels, const std::string& vector,
                    const RunConfig& config) {
  if (input.empty() == levels.empty()) throw InvalidInput("classify needs exactly one of --input or --levels");
  const StateVector v = input.empty() ? named_vector(vector, symbolic_state(levels), config) : read_state_file(input);
  const auto cls = classify_symmetry(v);
  Report rep;
  rep.data = {{"class", cls.to_string()}, {"pair", cls.pair}, {"member", cls.member}};
  rep.pretty.push_back(cls.to_string());
  return rep;
}

struct ExpectArgs {
  std::string levels;
  std::string vector = "S";
  std::string input;
  std::string op = "H";
  std::string energies;
  std::string momenta;
  double length = 1.0;
  int particle = 1;
};

Report cmd_expect(const ExpectArgs& a, const RunConfig& config) {
  if (a.input.empty() == a.levels.empty()) throw InvalidInput("expect needs exactly one of --input or --levels");
  const StateVector v = a.input.empty() ? named_vector(a.vector, symbolic_state(a.levels), config)
                                        : read_state_file(a.input);
  const std::string state_name = a.input.empty() ? a.vector + "(" + a.levels + ")" : a.input;
  Report rep;
  rep.data = {{"state", state_name}, {"operator", a.op}, {"particle", a.particle}};
  auto exact_op = [&](const std::string& values, const std::string& what) {
    const auto list = rational_list(values);
    if (static_cast<int>(list.size()) < v.basis_size()) {
      throw DimensionMismatch(what + " lists " + std::to_string(list.size()) + " values for " +
                              std::to_string(v.basis_size()) + " levels");
    }
    return ExactOperator::diagonal(list);
  };
  if (a.op == "H" && a.energies.empty()) {
    const auto form = energy_expectation_form(v, a.particle);
    json coefficients = json::array();
    std::string text;
    for (std::size_t k = 0; k < form.size(); ++k) {
      coefficients.push_back(form[k].to_string());
      if (form[k].is_zero()) continue;
      if (!text.empty()) text += " + ";
      text += form[k].to_string() + "*eps_" + std::string(1, static_cast<char>('a' + k));
    }
    if (text.empty()) text = "0";
    rep.data["form"] = coefficients;
    rep.data["value_exact"] = text;
    rep.data["value_float"] = nullptr;
    rep.pretty.push_back("<H_" + std::to_string(a.particle) + "> = " + text);
    return rep;
  }
  if (a.op == "H" || a.op == "p") {
    const auto op = a.op == "H" ? exact_op(a.energies, "--energies") : exact_op(a.momenta, "--momenta");
    if (a.op == "p" && a.momenta.empty()) throw InvalidInput("--op p needs --momenta");
    const auto value = one_body_expectation(v, op, a.particle);
    rep.data["value_exact"] = value.to_string();
    rep.data["value_float"] = value.to_double();
    rep.pretty.push_back("<" + a.op + "_" + std::to_string(a.particle) + "> = " + value.to_string() + " = " +
                         format_double(value.to_double()));
    return rep;
  }
  if (a.op == "x") {
    const double value = one_body_expectation(v, box_position_operator(a.length, v.basis_size()), a.particle);
    rep.data["length"] = a.length;
    rep.data["value_exact"] = nullptr;
    rep.data["value_float"] = value;
    rep.pretty.push_back("<x_" + std::to_string(a.particle) + "> = " + format_double(value));
    return rep;
  }
  throw InvalidInput("operator must be H, x or p, got '" + a.op + "'");
}

struct OccupationArgs {
  int level_count = 0;
  std::string levels;
  int n = 0;
  std::string stat = "be";
};

Report cmd_occupations(const OccupationArgs& a, const RunConfig& config) {
  const Statistics stat = parse_statistics(a.stat);
  std::vector<double> energies;
  int n_levels = a.level_count;
  if (!a.levels.empty()) {
    energies = numeric_levels(a.levels);
    n_levels = static_cast<int>(energies.size());
  }
  if (n_levels < 1) throw InvalidInput("occupations needs --levels-count or --levels");
  check_particle_cap(a.n, config);
  check_level_cap(n_levels, config);
  const auto occupations = enumerate_occupations(n_levels, a.n, stat);
  Report rep;
  for (int k = 0; k < n_levels; ++k) rep.header.push_back("n_" + std::to_string(k));
  if (!energies.empty()) rep.header.emplace_back("energy");
  json list = json::array();
  for (const auto& occ : occupations) {
    json entry = {{"n", occ}};
    std::vector<std::string> row;
    for (int x : occ) row.push_back(std::to_string(x));
    if (!energies.empty()) {
      double e = 0.0;
      for (std::size_t k = 0; k < occ.size(); ++k) e += occ[k] * energies[k];
      entry["energy"] = e;
      row.push_back(format_double(e));
    }
    list.push_back(entry);
    rep.rows.push_back(row);
  }
  rep.data = {{"statistics", to_string(stat)},
              {"n_levels", n_levels},
              {"n_particles", a.n},
              {"count", occupations.size()},
              {"occupations", list}};
  return rep;
}

struct PartitionArgs {
  std::string stat = "be";
  std::string levels;
  std::string spectrum_file;
  bool box1d = false;
  bool box3d = false;
  bool dimensionless = false;
  int cutoff = 0;
  double length = 1.0;
  double mass = 0.0;
  std::optional<double> n;  // canonical count, or continuum N
  std::optional<double> mu;
  std::optional<double> beta;
  std::optional<double> temperature;
  bool continuum = false;
  std::optional<double> volume;
};

double mass_or_default(double mass, const RunConfig& config) {
  if (mass > 0) return mass;
  if (mass < 0) throw InvalidInput("--mass must be positive");
  return config.mode == "si" ? 1.66053906660e-27 : 1.0;
}

Spectrum partition_spectrum(const PartitionArgs& a, const RunConfig& config) {
  const int sources = static_cast<int>(!a.levels.empty()) + static_cast<int>(!a.spectrum_file.empty()) +
                      static_cast<int>(a.box1d) + static_cast<int>(a.box3d) + static_cast<int>(a.dimensionless);
  if (sources != 1) {
    throw InvalidInput("give exactly one spectrum: --levels, --spectrum-file, --box1d, --box3d or --dimensionless");
  }
  if (!a.levels.empty()) {
    const auto e = numeric_levels(a.levels);
    check_level_cap(static_cast<int>(e.size()), config);
    return spectrum_from_energies(e);
  }
  if (!a.spectrum_file.empty()) {
    std::ifstream in(a.spectrum_file);
    if (!in) throw InvalidInput("cannot open '" + a.spectrum_file + "'");
    auto spec = read_spectrum_csv(in);
    check_level_cap(spec.size(), config);
    return spec;
  }
  if (a.cutoff < 1) throw InvalidInput("--cutoff must be a positive level count");
  check_level_cap(a.cutoff, config);
  const Units units = units_for(config, mass_or_default(a.mass, config));
  if (a.box1d) return build_spectrum(Box1DSource{a.length, units}, a.cutoff);
  if (a.box3d) return build_spectrum(Box3DSource{a.length, units}, a.cutoff);
  return build_spectrum(DimensionlessSource{}, a.cutoff);
}

const char* const kFreeEnergyConvention = "F = -kT ln Z; the printed F = kT ln Z is read as a sign slip";

Report cmd_partition(const PartitionArgs& a, const RunConfig& config) {
  const Statistics stat = parse_statistics(a.stat);
  const Units units = units_for(config, mass_or_default(a.mass, config));
  Report rep;
  if (a.continuum) {
    if (!a.volume || !a.n || !a.temperature) throw InvalidInput("--continuum needs --V, --N and --T");
    if (is_quantum(stat)) throw InvalidInput("--continuum supports mb-nn and mb-factorial");
    const ThermoPoint tp{*a.temperature, *a.volume, *a.n, 0.0, units};
    if (!(tp.temperature > 0 && tp.volume > 0 && tp.n_particles > 0)) {
      throw InvalidInput("--T, --V and --N must be positive");
    }
    const double ln_z = ln_continuum_Z(tp, stat);
    const double f = free_energy_from_ln_Z(ln_z, tp);
    rep.data = {{"inputs", {{"statistics", to_string(stat)}, {"T", tp.temperature}, {"V", tp.volume},
                            {"N", tp.n_particles}, {"mode", config.mode}, {"mass", units.mass}}},
                {"outputs", {{"kind", "continuum"}, {"ln_Z", ln_z}, {"Z", std::exp(ln_z)},
                             {"lambda", thermal_wavelength(tp)}, {"F", f}, {"F_convention", kFreeEnergyConvention}}}};
    rep.pretty = {"ln Z = " + format_double(ln_z), "Z = " + format_double(std::exp(ln_z)),
                  "Lambda = " + format_double(thermal_wavelength(tp)), "F = " + format_double(f) + "  (F = -kT ln Z)"};
    return rep;
  }
  if (a.beta.has_value() == a.temperature.has_value()) throw InvalidInput("give exactly one of --beta or --T");
  const double beta = a.beta ? *a.beta : 1.0 / (units.boltzmann * *a.temperature);
  if (!(beta > 0) || !std::isfinite(beta)) throw InvalidInput("beta must be positive and finite");
  if (a.n.has_value() == a.mu.has_value()) throw InvalidInput("give exactly one of -N (canonical) or --mu (grand)");
  const Spectrum spec = partition_spectrum(a, config);
  json inputs = {{"statistics", to_string(stat)}, {"beta", beta}, {"n_levels", spec.size()},
                 {"source", spec.source}, {"mode", config.mode}};
  if (a.mu) {
    inputs["mu"] = *a.mu;
    const double ln_xi = ln_grand_Xi(spec, beta, *a.mu, stat);
    rep.data = {{"inputs", inputs}, {"outputs", {{"kind", "grand"}, {"Xi", std::exp(ln_xi)}, {"ln_Xi", ln_xi}}}};
    rep.pretty = {"Xi = " + format_double(std::exp(ln_xi)), "ln Xi = " + format_double(ln_xi)};
    return rep;
  }
  if (*a.n < 0 || *a.n != std::floor(*a.n) || *a.n > 1e9) throw InvalidInput("-N must be a non-negative integer");
  const int n = static_cast<int>(*a.n);
  check_particle_cap(n, config);
  inputs["N"] = n;
  const double ln_z = ln_canonical_Z(spec, n, beta, stat);
  const double f = -ln_z / beta;
  json checks = json::object();
  rep.pretty = {"Z = " + format_double(std::exp(ln_z)), "ln Z = " + format_double(ln_z),
                "F = " + format_double(f) + "  (F = -kT ln Z)"};
  if (is_quantum(stat) && n <= kMaxRecursionParticles) {
    const double z_rec = canonical_Z_recursive(spec, n, beta, stat == Statistics::BoseEinstein ? 1 : -1);
    const double z = std::exp(ln_z);
    const double scale = std::max({std::abs(z), std::abs(z_rec), 1e-300});
    const double rel = std::abs(z - z_rec) / scale;
    checks["recursion_Z"] = z_rec;
    checks["recursion_rel_diff"] = rel;
    rep.pretty.push_back("recursion Z = " + format_double(z_rec) + "  (relative difference " + format_double(rel) + ")");
  }
  rep.data = {{"inputs", inputs},
              {"outputs", {{"kind", "canonical"}, {"Z", std::exp(ln_z)}, {"ln_Z", ln_z}, {"F", f},
                           {"F_convention", kFreeEnergyConvention}}},
              {"checks", checks}};
  return rep;
}

struct ExtensivityArgs {
  std::string stat = "mb-nn";
  double temperature = 1.0;
  double density = 1.0;
  std::string sizes = "1,2,10,100,10000";
  bool continuum = false;
  bool box1d = false;
  int cutoff = 0;
  double mass = 0.0;
};

Report cmd_extensivity(const ExtensivityArgs& a, const RunConfig& config) {
  const Statistics stat = parse_statistics(a.stat);
  if (a.continuum && a.box1d) throw InvalidInput("choose one of --continuum or --box1d");
  if (!(a.density > 0) || !(a.temperature > 0)) throw InvalidInput("--density and --T must be positive");
  const Units units = units_for(config, mass_or_default(a.mass, config));
  std::vector<VolumeAndCount> sizes;
  for (const auto& token : split(a.sizes)) {
    const int n = parse_int(token, "size");
    if (n < 1) throw InvalidInput("sizes must be positive particle counts");
    sizes.push_back({n / a.density, n});
  }
  std::vector<ExtensivityRow> rows;
  if (a.box1d) {
    if (a.cutoff < 1) throw InvalidInput("--box1d needs --cutoff");
    check_level_cap(a.cutoff, config);
    for (const auto& s : sizes) check_particle_cap(s.n_particles, config);
    const int cutoff = a.cutoff;
    rows = extensivity_report([&](double volume) { return build_spectrum(Box1DSource{volume, units}, cutoff); }, stat,
                              a.temperature, units, sizes);
  } else {
    rows = extensivity_report_continuum(stat, a.temperature, units, sizes);
  }
  Report rep;
  rep.header = {"V", "N", "ln_Z", "F", "F_per_N", "drift"};
  json list = json::array();
  for (const auto& r : rows) {
    list.push_back({{"V", r.volume}, {"N", r.n_particles}, {"ln_Z", r.ln_z}, {"F", r.free_energy},
                    {"F_per_N", r.free_energy_per_particle}, {"drift", r.drift}});
    rep.rows.push_back({format_double(r.volume), std::to_string(r.n_particles), format_double(r.ln_z),
                        format_double(r.free_energy), format_double(r.free_energy_per_particle), format_double(r.drift)});
  }
  rep.data = {{"statistics", to_string(stat)}, {"T", a.temperature}, {"density", a.density},
              {"source", a.box1d ? "box1d" : "continuum"}, {"rows", list}};
  return rep;
}

Report cmd_verify_paper(bool negative_control, const RunConfig& config) {
  VerifyOptions options;
  options.seed = config.seed;
  if (negative_control) options.table = tampered_table();
  const auto checks = run_verify_paper(options);
  const auto summary = summarize(checks);
  Report rep;
  rep.data = ledger_to_json(checks);
  rep.data["negative_control"] = negative_control;
  rep.header = {"id", "location", "status", "lhs", "rhs"};
  for (const auto& c : checks) {
    rep.rows.push_back({c.id, c.location, to_string(c.status), c.lhs, c.rhs});
    std::string line = "[" + to_string(c.status) + "] " + c.id + " | " + c.location + " | " + c.lhs + " | " + c.rhs;
    if (!c.detail.empty()) line += " | " + c.detail;
    rep.pretty.push_back(line);
  }
  rep.pretty.push_back(std::to_string(summary.passed) + " passed, " + std::to_string(summary.noted) + " noted, " +
                       std::to_string(summary.failed) + " failed");
  rep.exit_code = summary.failed == 0 ? kExitOk : kExitVerifyFailed;
  return rep;
}

// ---- output ----------------------------------------------------------------

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_number_float()) {
    out.emplace_back(prefix, format_double(j.get<double>()));
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string render(const Report& rep, const std::string& output) {
  std::ostringstream os;
  if (output == "json") {
    os << canonical_dump(rep.data) << "\n";
  } else if (output == "csv") {
    if (!rep.header.empty()) {
      for (std::size_t i = 0; i < rep.header.size(); ++i) os << (i ? "," : "") << csv_cell(rep.header[i]);
      os << "\n";
      for (const auto& row : rep.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << "\n";
      }
    } else {
      std::vector<std::pair<std::string, std::string>> flat;
      flatten(rep.data, "", flat);
      os << "key,value\n";
      for (const auto& [k, v] : flat) os << csv_cell(k) << "," << csv_cell(v) << "\n";
    }
  } else if (!rep.pretty.empty()) {
    for (const auto& line : rep.pretty) os << line << "\n";
  } else if (!rep.header.empty()) {
    std::vector<std::size_t> width(rep.header.size());
    for (std::size_t i = 0; i < rep.header.size(); ++i) width[i] = rep.header[i].size();
    for (const auto& row : rep.rows) {
      for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        os << (i ? "  " : "") << std::left << std::setw(static_cast<int>(width[i])) << cells[i];
      }
      os << "\n";
    };
    line(rep.header);
    for (const auto& row : rep.rows) line(row);
  } else {
    std::vector<std::pair<std::string, std::string>> flat;
    flatten(rep.data, "", flat);
    for (const auto& [k, v] : flat) os << k << ": " << v << "\n";
  }
  return os.str();
}

// ---- configuration ---------------------------------------------------------

void apply_setting(RunConfig& config, const std::string& key, const std::string& value, const std::string& origin) {
  if (key == "mode") {
    config.mode = value;
  } else if (key == "max_N") {
    config.max_N = parse_int(value, origin + " max_N");
  } else if (key == "max_levels") {
    config.max_levels = parse_int(value, origin + " max_levels");
  } else if (key == "output") {
    config.output = value;
  } else if (key == "seed") {
    try {
      config.seed = std::stoull(value);
    } catch (const std::exception&) {
      throw InvalidInput(origin + " seed must be a non-negative integer");
    }
  } else {
    throw InvalidInput(origin + ": unknown key '" + key + "'");
  }
}

void read_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidInput(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), path + ":" + std::to_string(line_no));
  }
}

void validate_config(const RunConfig& config) {
  if (config.mode != "dimensionless" && config.mode != "si") throw InvalidInput("mode must be dimensionless or si");
  if (config.output != "json" && config.output != "csv" && config.output != "pretty") {
    throw InvalidInput("output must be json, csv or pretty");
  }
  if (config.max_N < 1 || config.max_N > kMaxRecursionParticles) {
    throw InvalidInput("max_N must lie in 1.." + std::to_string(kMaxRecursionParticles));
  }
  if (config.max_levels < 1 || config.max_levels > kMaxSpectrumLevels) {
    throw InvalidInput("max_levels must lie in 1.." + std::to_string(kMaxSpectrumLevels));
  }
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const BoseDivergence*>(&e) != nullptr) return kExitBoseDivergence;
  if (dynamic_cast<const CapacityExceeded*>(&e) != nullptr || dynamic_cast<const CutoffTooLarge*>(&e) != nullptr) {
    return kExitCapacity;
  }
  return kExitInvalidInput;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  CLI::App app{"Permutation-symmetry states, one-body expectations and ideal-gas partition functions", "idstat"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string output;
  std::string mode;
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int max_n = 0;
  int max_levels = 0;
  auto* opt_output = app.add_option("--output", output, "json | csv | pretty (default pretty)");
  auto* opt_mode = app.add_option("--mode", mode, "dimensionless | si");
  auto* opt_seed = app.add_option("--seed", seed, "seed for randomized property sweeps");
  auto* opt_max_n = app.add_option("--max-N", max_n, "particle-count cap");
  auto* opt_max_levels = app.add_option("--max-levels", max_levels, "level-count cap");
  app.add_option("--config", config_path, "key=value file (mode, max_N, max_levels, output, seed)");
  app.add_option("--out", out_path, "write the result to this file instead of standard output");

  SymmetrizeArgs sym;
  auto* c_sym = app.add_subcommand("symmetrize", "symmetrized or antisymmetrized product state");
  c_sym->add_option("-n", sym.n, "particle count (checked against the levels)");
  c_sym->add_option("-l,--levels", sym.levels, "levels as letters, e.g. a,b,c")->required();
  c_sym->add_option("-p,--parity", sym.parity, "S or A");
  c_sym->add_flag("--raw", sym.raw, "skip renormalization for repeated levels");

  std::string mb_levels;
  auto* c_mixed = app.add_subcommand("mixed-basis", "the six N = 3 basis vectors over three distinct levels");
  c_mixed->add_option("-l,--levels", mb_levels, "three distinct letters")->required();

  std::string dec_levels, dec_state, dec_input;
  auto* c_dec = app.add_subcommand("decompose", "coefficients in the six N = 3 basis vectors");
  c_dec->add_option("-l,--levels", dec_levels, "basis levels, three distinct letters")->required();
  c_dec->add_option("--state", dec_state, "product state as letters, e.g. a,b,c");
  c_dec->add_option("--input", dec_input, "state vector JSON file");

  std::string cls_input, cls_levels, cls_vector = "S";
  auto* c_cls = app.add_subcommand("classify", "symmetry class of a state vector");
  c_cls->add_option("--input", cls_input, "state vector JSON file");
  c_cls->add_option("-l,--levels", cls_levels, "levels as letters");
  c_cls->add_option("--vector", cls_vector, "product | S | A | s1 | s2 | s1p | s2p");

  ExpectArgs ex;
  auto* c_ex = app.add_subcommand("expect", "one-body expectation value for one particle");
  c_ex->add_option("-l,--levels", ex.levels, "levels as letters");
  c_ex->add_option("--vector", ex.vector, "product | S | A | s1 | s2 | s1p | s2p");
  c_ex->add_option("--input", ex.input, "state vector JSON file");
  c_ex->add_option("--op", ex.op, "H | x | p");
  c_ex->add_option("--energies", ex.energies, "level energies as rationals; omit for the symbolic form");
  c_ex->add_option("--momenta", ex.momenta, "level momenta as rationals");
  c_ex->add_option("--L", ex.length, "box length for x");
  c_ex->add_option("-i,--particle", ex.particle, "particle label, 1-based");

  OccupationArgs oc;
  auto* c_oc = app.add_subcommand("occupations", "occupation-number states with fixed N");
  c_oc->add_option("--levels-count", oc.level_count, "number of levels");
  c_oc->add_option("--levels", oc.levels, "level energies");
  c_oc->add_option("-N,--N", oc.n, "particle count")->required();
  c_oc->add_option("--stat", oc.stat, "be | fd | mb-nn | mb-factorial");

  PartitionArgs pa;
  auto* c_pa = app.add_subcommand("partition", "canonical Z, grand Xi or the continuum gas");
  c_pa->add_option("--stat", pa.stat, "be | fd | mb-nn | mb-factorial");
  c_pa->add_option("--levels", pa.levels, "level energies");
  c_pa->add_option("--spectrum-file", pa.spectrum_file, "CSV with an energy column");
  c_pa->add_flag("--box1d", pa.box1d, "1-D box spectrum");
  c_pa->add_flag("--box3d", pa.box3d, "3-D cubic box spectrum");
  c_pa->add_flag("--dimensionless", pa.dimensionless, "eps_n = n^2 spectrum");
  c_pa->add_option("--cutoff", pa.cutoff, "number of levels for generated spectra");
  c_pa->add_option("--L", pa.length, "box length");
  c_pa->add_option("--mass", pa.mass, "particle mass");
  c_pa->add_option("-N,--N", pa.n, "particle count");
  c_pa->add_option("--mu", pa.mu, "chemical potential (grand canonical)");
  c_pa->add_option("--beta", pa.beta, "inverse temperature");
  c_pa->add_option("--T", pa.temperature, "temperature");
  c_pa->add_flag("--continuum", pa.continuum, "3-D continuum ideal gas");
  c_pa->add_option("--V", pa.volume, "volume (continuum)");

  ExtensivityArgs ea;
  auto* c_ea = app.add_subcommand("extensivity", "F/N across sizes at fixed density");
  c_ea->add_option("--stat", ea.stat, "mb-nn | mb-factorial | be | fd");
  c_ea->add_option("--T", ea.temperature, "temperature");
  c_ea->add_option("--density", ea.density, "N/V");
  c_ea->add_option("--sizes", ea.sizes, "particle counts");
  c_ea->add_flag("--continuum", ea.continuum, "3-D continuum ideal gas (default)");
  c_ea->add_flag("--box1d", ea.box1d, "1-D box spectra with length V");
  c_ea->add_option("--cutoff", ea.cutoff, "levels per box spectrum");
  c_ea->add_option("--mass", ea.mass, "particle mass");

  bool negative_control = false;
  auto* c_vp = app.add_subcommand("verify-paper", "replay every identity and print the ledger");
  c_vp->add_flag("--negative-control", negative_control, "use a tampered s1 coefficient; must fail");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  try {
    RunConfig config;
    if (!config_path.empty()) read_config_file(config, config_path);
    if (auto v = env("IDSTAT_MODE")) apply_setting(config, "mode", *v, "IDSTAT_MODE");
    if (auto v = env("IDSTAT_MAX_N")) apply_setting(config, "max_N", *v, "IDSTAT_MAX_N");
    if (auto v = env("IDSTAT_MAX_LEVELS")) apply_setting(config, "max_levels", *v, "IDSTAT_MAX_LEVELS");
    if (auto v = env("IDSTAT_OUTPUT")) apply_setting(config, "output", *v, "IDSTAT_OUTPUT");
    if (auto v = env("IDSTAT_SEED")) apply_setting(config, "seed", *v, "IDSTAT_SEED");
    if (opt_output->count() > 0) config.output = output;
    if (opt_mode->count() > 0) config.mode = mode;
    if (opt_seed->count() > 0) config.seed = seed;
    if (opt_max_n->count() > 0) config.max_N = max_n;
    if (opt_max_levels->count() > 0) config.max_levels = max_levels;
    validate_config(config);

    Report rep;
    if (c_sym->parsed()) {
      rep = cmd_symmetrize(sym, config);
    } else if (c_mixed->parsed()) {
      rep = cmd_mixed_basis(mb_levels);
    } else if (c_dec->parsed()) {
      rep = cmd_decompose(dec_levels, dec_state, dec_input, config);
    } else if (c_cls->parsed()) {
      rep = cmd_classify(cls_input, cls_levels, cls_vector, config);
    } else if (c_ex->parsed()) {
      rep = cmd_expect(ex, config);
    } else if (c_oc->parsed()) {
      rep = cmd_occupations(oc, config);
    } else if (c_pa->parsed()) {
      rep = cmd_partition(pa, config);
    } else if (c_ea->parsed()) {
      rep = cmd_extensivity(ea, config);
    } else {
      rep = cmd_verify_paper(negative_control, config);
    }

    const std::string text = render(rep, config.output);
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(out_path);
      if (!file) throw InvalidInput("cannot write '" + out_path + "'");
      file << text;
    }
    return rep.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

}  // namespace idstat::cli
