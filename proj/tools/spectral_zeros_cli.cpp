// spectral_zeros: partition-function zeros and poles from the command line.
//
//   spectral_zeros oscillator --beta 1 --e0 1
//   spectral_zeros zeta --s 2
//   spectral_zeros zeta zeros --count 5 --out zeros.txt
//   spectral_zeros zeta explicit --x 20
//   spectral_zeros qnm --synthetic reflection --count 10
//   spectral_zeros qnm scan --spectrum modes.json --out scan.pgm --format pgm
//   spectral_zeros scan --evaluator zeta_em --re-min 0 --re-max 1 --im-min 10 --im-max 30
//
// Exit status: 0 success, 1 usage or input error, 2 numerical-domain error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "spectral_zeros/spectral_zeros.hpp"

namespace {

using spz::Complex;
using spz::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string out;
  std::string format;
  bool no_meta = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& o, const std::string& default_format,
                        const std::vector<std::string>& formats) {
  o.format = default_format;
  cmd->add_option("--out", o.out, "Write results to this file instead of stdout");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
  cmd->add_flag("--no-meta", o.no_meta, "Omit the metadata block from JSON output");
}

// Writes to --out when given, else stdout.
template <typename Writer>
void emit(const OutputOptions& o, Writer write) {
  if (o.out.empty()) {
    std::ostringstream buffer;
    write(buffer);
    std::fwrite(buffer.str().data(), 1, buffer.str().size(), stdout);
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + o.out + "'");
  write(file);
  if (!file) throw UsageError("write to '" + o.out + "' failed");
}

// A small comparison table rendered as text, CSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json context = json::object();

  static std::string cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return fmt::format("{}", v.get<double>() + 0.0);
    return v.dump();
  }

  void text(std::ostream& out) const {
    std::vector<std::size_t> width(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      width[c] = columns[c].size();
      for (const auto& r : rows) width[c] = std::max(width[c], cell(r[c]).size());
    }
    for (auto it = context.begin(); it != context.end(); ++it) out << it.key() << " = " << cell(it.value()) << '\n';
    for (std::size_t c = 0; c < columns.size(); ++c) out << fmt::format("{:<{}}  ", columns[c], width[c]);
    out << '\n';
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < columns.size(); ++c) out << fmt::format("{:<{}}  ", cell(r[c]), width[c]);
      out << '\n';
    }
  }

  void csv(std::ostream& out) const {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    out << '\n';
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << cell(r[c]);
      out << '\n';
    }
  }

  void to_json(std::ostream& out, bool meta) const {
    json j = context;
    json list = json::array();
    for (const auto& r : rows) {
      json obj = json::object();
      for (std::size_t c = 0; c < columns.size(); ++c) {
        obj[columns[c]] = r[c].is_number_float() ? json(r[c].get<double>() + 0.0) : r[c];
      }
      list.push_back(obj);
    }
    j["rows"] = list;
    if (meta) j["meta"] = {{"generator", "spectral_zeros"}};
    out << j.dump(2) << '\n';
  }

  void emit(const OutputOptions& o) const {
    if (o.format == "pgm") throw UsageError("--format pgm needs a grid; use it with 'scan' or 'qnm scan'");
    if (o.out.empty() && o.format == "csv" && !explicit_csv) {
      ::emit(o, [&](std::ostream& out) { text(out); });
      return;
    }
    ::emit(o, [&](std::ostream& out) {
      if (o.format == "json") {
        to_json(out, !o.no_meta);
      } else {
        csv(out);
      }
    });
  }

  bool explicit_csv = false;
};

double rel_diff(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

// --- oscillator --------------------------------------------------------------

struct OscillatorArgs {
  double beta = 1.0, beta_im = 0.0, e0 = 1.0;
  std::size_t terms = 200, factors = 100000;
  bool no_tail = false;
  OutputOptions out;
};

void run_oscillator(const OscillatorArgs& a, bool csv_requested) {
  const Complex beta(a.beta, a.beta_im);
  const Complex closed = spz::closed_form_oscillator(beta, a.e0);
  const bool tail = !a.no_tail;

  Table t;
  t.explicit_csv = csv_requested;
  t.context = {{"beta", fmt::format("{}{:+}i", beta.real(), beta.imag())}, {"e0", a.e0}};
  t.columns = {"method", "re", "im", "rel_diff", "tolerance", "agrees"};
  t.rows.push_back({"closed_form", closed.real(), closed.imag(), 0.0, "-", "-"});

  const auto verdict = [](double diff, double tol) { return json(diff < tol ? "yes" : "no"); };
  if (beta.real() * a.e0 > 0.0) {
    const auto direct = spz::partition_direct(spz::Spectrum::oscillator(a.e0), beta, a.terms,
                                              tail ? spz::TailMode::geometric : spz::TailMode::none);
    const double d = rel_diff(direct.value, closed);
    t.rows.push_back({fmt::format("direct_sum[{}{}]", a.terms, tail ? "+tail" : ""), direct.value.real(),
                      direct.value.imag(), d, 1e-12, verdict(d, 1e-12)});
  } else {
    t.rows.push_back({"direct_sum", "diverges", "-", "-", "-", "-"});
  }
  const auto product = spz::pole_product_oscillator(beta, a.e0, a.factors, tail);
  const double dp = rel_diff(product.value, closed);
  t.rows.push_back({fmt::format("pole_product[{}{}]", a.factors, tail ? "+tail" : ""), product.value.real(),
                    product.value.imag(), dp, 1e-6, verdict(dp, 1e-6)});
  const auto printed = spz::pole_product_oscillator_uncorrected(beta, a.e0, a.factors, tail);
  t.rows.push_back({"uncorrected_product", printed.value.real(), printed.value.imag(),
                    rel_diff(printed.value, closed), "-", "-"});
  t.emit(a.out);
}

// --- zeta ----------------------------------------------------------------------

struct ZerosSource {
  std::size_t count = 100;
  std::string file;
  bool verify = false;
};

spz::ZetaZeroTable load_zeros(const ZerosSource& z) {
  if (!z.file.empty()) return spz::ingest_zeros_file(z.file, z.verify);
  return spz::find_zeros(z.count);
}

void add_zero_source(CLI::App* cmd, ZerosSource& z) {
  cmd->add_option("--zeros", z.count, "Number of computed zeros (ignored with --zeros-file)")->capture_default_str();
  cmd->add_option("--zeros-file", z.file, "Zero ordinates, one per line");
  cmd->add_flag("--verify-zeros", z.verify, "Check each file ordinate against zeta");
}

struct ZetaArgs {
  double s = 2.0, s_im = 0.0;
  std::size_t cutoff = 0;
  int order = 6;
  std::uint64_t primes = 100000;
  std::size_t gamma_terms = 10000;
  ZerosSource zeros;
  OutputOptions out;
};

void run_zeta(const ZetaArgs& a, bool csv_requested) {
  const Complex s(a.s, a.s_im);
  const std::size_t cutoff = a.cutoff == 0 ? spz::adaptive_cutoff(s) : a.cutoff;
  const auto em = spz::zeta_em(s, cutoff, a.order);
  if (!em.warning.empty()) std::cerr << "warning: " << em.warning << '\n';

  Table t;
  t.explicit_csv = csv_requested;
  t.context = {{"s", fmt::format("{}{:+}i", s.real(), s.imag())}};
  t.columns = {"method", "re", "im", "rel_diff"};
  t.rows.push_back({fmt::format("euler_maclaurin[N={}]", cutoff), em.value.real(), em.value.imag(), 0.0});
  if (s.real() > 1.0) {
    const auto ep = spz::euler_product(s, a.primes);
    t.rows.push_back({fmt::format("euler_product[p<={}]", a.primes), ep.value.real(), ep.value.imag(),
                      rel_diff(ep.value, em.value)});
  } else {
    t.rows.push_back({"euler_product", "diverges", "-", "-"});
  }
  const auto table = load_zeros(a.zeros);
  const auto hp = spz::hadamard_product(s, table, table.size(), a.gamma_terms);
  t.rows.push_back({fmt::format("hadamard[{} zeros]", table.size()), hp.value.real(), hp.value.imag(),
                    rel_diff(hp.value, em.value)});
  t.emit(a.out);
}

struct ZerosArgs {
  std::size_t count = 10;
  double step = 0.02;
  OutputOptions out;
};

void run_zeros(const ZerosArgs& a) {
  if (a.out.format == "pgm") throw UsageError("--format pgm needs a grid; use it with 'scan' or 'qnm scan'");
  spz::FindZerosOptions opt;
  opt.step = a.step;
  const auto table = spz::find_zeros(a.count, opt);
  emit(a.out, [&](std::ostream& out) {
    if (a.out.format == "csv") {
      spz::write_zeros_csv(out, table);
    } else if (a.out.format == "json") {
      spz::write_zeros_json(out, table);
    } else {
      spz::write_zeros_text(out, table);
    }
  });
}

struct ExplicitArgs {
  double x = 20.0;
  ZerosSource zeros;
  OutputOptions out;
};

void run_explicit(const ExplicitArgs& a, bool csv_requested) {
  const auto table = load_zeros(a.zeros);
  const auto r = spz::explicit_formula_psi(a.x, table, table.size());
  if (!r.warning.empty()) std::cerr << "warning: " << r.warning << '\n';
  const double psi = spz::psi_direct(a.x);
  Table t;
  t.explicit_csv = csv_requested;
  t.context = {{"x", a.x}};
  t.columns = {"method", "psi", "abs_diff"};
  t.rows.push_back({"von_mangoldt_sum", psi, 0.0});
  t.rows.push_back({fmt::format("explicit_formula[{} zeros]", table.size()), r.value.real(),
                    std::abs(r.value.real() - psi)});
  t.emit(a.out);
}

// --- qnm -----------------------------------------------------------------------

struct SpectrumSource {
  std::string file;
  std::string synthetic;
  std::size_t count = 20;
  double temperature = 1.0;
  double action = 0.0;
  double amplitude = 1e-3;
  std::uint64_t seed = 1;
};

void add_spectrum_source(CLI::App* cmd, SpectrumSource& s) {
  auto* file = cmd->add_option("--spectrum", s.file, "QNM spectrum JSON file");
  cmd->add_option("--synthetic", s.synthetic, "Synthetic spectrum instead of a file")
      ->check(CLI::IsMember({"affine", "perturbed", "reflection"}))
      ->excludes(file);
  cmd->add_option("--count", s.count, "Synthetic mode count (pairs for reflection)")->capture_default_str();
  cmd->add_option("--temperature", s.temperature, "Synthetic temperature T")->capture_default_str();
  cmd->add_option("--action", s.action, "Synthetic Euclidean action")->capture_default_str();
  cmd->add_option("--amplitude", s.amplitude, "Perturbation amplitude")->capture_default_str();
  cmd->add_option("--seed", s.seed, "Perturbation seed")->capture_default_str();
}

// Synthetic spectra: affine z_n = 2 pi T (1 - i (n+1)); reflection adds the mirror images.
spz::QNMSpectrum load_spectrum(const SpectrumSource& s) {
  if (!s.file.empty()) return spz::load_qnm_spectrum(s.file);
  if (s.synthetic.empty()) throw UsageError("one of --spectrum or --synthetic is required");
  const double w = spz::kTwoPi * s.temperature;
  spz::QNMSpectrum spec;
  if (s.synthetic == "affine") {
    spec = spz::synthetic_affine_spectrum(s.count, Complex(w, -w), Complex(0.0, -w), s.temperature, s.action);
  } else if (s.synthetic == "perturbed") {
    spec = spz::synthetic_perturbed_spectrum(s.count, Complex(w, -w), Complex(0.0, -w), s.amplitude * w, s.seed,
                                             s.temperature);
    spec.euclidean_action = s.action;
  } else {
    spec = spz::synthetic_reflection_spectrum(s.count, w, -w, -w, s.temperature, s.action);
  }
  spec.validate();
  return spec;
}

struct QnmArgs {
  SpectrumSource source;
  double delta = 0.0;
  double tail_fraction = 0.5;
  OutputOptions out;
};

void run_qnm(const QnmArgs& a, bool csv_requested) {
  const auto spec = load_spectrum(a.source);
  const Complex one_loop = spz::one_loop_log_partition(spec, a.delta);
  Table t;
  t.explicit_csv = csv_requested;
  t.context = {{"modes", spec.modes.size()}, {"temperature", spec.temperature}};
  t.columns = {"quantity", "re", "im"};
  t.rows.push_back({"one_loop_log_partition", one_loop.real(), one_loop.imag()});
  t.rows.push_back({"conjectured_log_at_0", -spec.euclidean_action, 0.0});

  // The fit needs modes ordered by |Im|; keep the file order otherwise.
  auto sorted = spec;
  std::stable_sort(sorted.modes.begin(), sorted.modes.end(),
                   [](Complex x, Complex y) { return std::abs(x.imag()) < std::abs(y.imag()); });
  if (sorted.symmetry == spz::Symmetry::reflection) {
    // fit one branch of a mirrored spectrum
    std::erase_if(sorted.modes, [](Complex z) { return z.real() < 0.0; });
    sorted.symmetry = spz::Symmetry::none;
  }
  try {
    const auto fit = spz::asymptotic_spacing_fit(sorted, a.tail_fraction);
    t.rows.push_back({"spacing_gap", fit.gap.real(), fit.gap.imag()});
    t.rows.push_back({"spacing_offset", fit.offset.real(), fit.offset.imag()});
    t.rows.push_back({"spacing_residual_rms", fit.residual_rms, 0.0});
  } catch (const spz::InvalidArgument& e) {
    std::cerr << "note: spacing fit skipped: " << e.what() << '\n';
  }
  t.emit(a.out);
}

// --- scans ---------------------------------------------------------------------

struct RegionArgs {
  spz::Region region{-1.0, 1.0, -1.0, 1.0};
  std::size_t cols = 64, rows = 64;
};

void add_region(CLI::App* cmd, RegionArgs& r) {
  cmd->add_option("--re-min", r.region.re_min)->capture_default_str();
  cmd->add_option("--re-max", r.region.re_max)->capture_default_str();
  cmd->add_option("--im-min", r.region.im_min)->capture_default_str();
  cmd->add_option("--im-max", r.region.im_max)->capture_default_str();
  cmd->add_option("--cols", r.cols, "Grid columns")->capture_default_str();
  cmd->add_option("--rows", r.rows, "Grid rows")->capture_default_str();
}

void emit_scan(const OutputOptions& o, const spz::GridScan& scan, const std::string& evaluator) {
  emit(o, [&](std::ostream& out) {
    if (o.format == "json") {
      spz::write_scan_json(out, scan, evaluator, !o.no_meta);
    } else if (o.format == "pgm") {
      spz::write_scan_pgm(out, scan);
    } else {
      spz::write_scan_csv(out, scan);
    }
  });
}

std::optional<spz::Pairing> parse_pairing(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "unpaired") return spz::Pairing::unpaired;
  if (s == "conjugate") return spz::Pairing::conjugate_pairs;
  return spz::Pairing::reflection_pairs;
}

struct ScanArgs {
  std::string evaluator;
  spz::EvaluatorParams params;
  bool no_tail = false;
  ZerosSource zeros;
  SpectrumSource spectrum;
  std::string pairing;
  RegionArgs region;
  OutputOptions out;
};

void run_scan(ScanArgs a) {
  a.params.tail_correction = !a.no_tail;
  if (a.evaluator == "zeta_hadamard") a.params.zeros = load_zeros(a.zeros);
  if (a.evaluator == "qnm_conjectured") a.params.spectrum = load_spectrum(a.spectrum);
  a.params.pairing = parse_pairing(a.pairing);
  const auto ev = spz::make_evaluator(a.evaluator, a.params);
  emit_scan(a.out, spz::grid_scan(ev, a.region.region, a.region.cols, a.region.rows), a.evaluator);
}

struct QnmScanArgs {
  SpectrumSource source;
  std::string pairing;
  RegionArgs region;
  OutputOptions out;
};

void run_qnm_scan(const QnmScanArgs& a) {
  spz::EvaluatorParams p;
  p.spectrum = load_spectrum(a.source);
  p.pairing = parse_pairing(a.pairing);
  const auto ev = spz::make_evaluator("qnm_conjectured", p);
  emit_scan(a.out, spz::grid_scan(ev, a.region.region, a.region.cols, a.region.rows), "qnm_conjectured");
}

// Deepest subcommand that appeared on the command line.
const CLI::App* active_command(const CLI::App& app) {
  const CLI::App* cur = &app;
  for (;;) {
    const auto used = cur->get_subcommands();
    if (used.empty()) return cur;
    cur = used.front();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partition functions, their zeros and poles, and complex-plane scans"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  const std::vector<std::string> table_formats = {"csv", "json", "pgm"};

  OscillatorArgs osc;
  auto* osc_cmd = app.add_subcommand("oscillator", "Closed form vs direct sum vs pole product");
  osc_cmd->add_option("--beta", osc.beta, "Re beta")->capture_default_str();
  osc_cmd->add_option("--beta-im", osc.beta_im, "Im beta")->capture_default_str();
  osc_cmd->add_option("--e0", osc.e0, "Level spacing E0")->capture_default_str()->check(CLI::PositiveNumber);
  osc_cmd->add_option("--terms", osc.terms, "Direct-sum terms")->capture_default_str()->check(CLI::PositiveNumber);
  osc_cmd->add_option("--factors", osc.factors, "Pole-product factors")->capture_default_str()->check(CLI::PositiveNumber);
  osc_cmd->add_flag("--no-tail", osc.no_tail, "Disable tail corrections");
  add_output_options(osc_cmd, osc.out, "csv", table_formats);

  ZetaArgs zeta;
  auto* zeta_cmd = app.add_subcommand("zeta", "Euler-Maclaurin vs Euler product vs Hadamard product");
  zeta_cmd->add_option("--s", zeta.s, "Re s")->capture_default_str();
  zeta_cmd->add_option("--s-im", zeta.s_im, "Im s")->capture_default_str();
  zeta_cmd->add_option("--cutoff", zeta.cutoff, "Euler-Maclaurin cutoff (0: adaptive)")->capture_default_str();
  zeta_cmd->add_option("--order", zeta.order, "Bernoulli correction order")->capture_default_str();
  zeta_cmd->add_option("--primes", zeta.primes, "Euler product prime limit")->capture_default_str();
  zeta_cmd->add_option("--gamma-terms", zeta.gamma_terms, "Gamma-factor product terms")->capture_default_str();
  add_zero_source(zeta_cmd, zeta.zeros);
  add_output_options(zeta_cmd, zeta.out, "csv", table_formats);

  ZerosArgs zeros;
  auto* zeros_cmd = zeta_cmd->add_subcommand("zeros", "Critical-line zero ordinates");
  zeros_cmd->add_option("--count", zeros.count, "Number of zeros")->capture_default_str()->check(CLI::PositiveNumber);
  zeros_cmd->add_option("--step", zeros.step, "Scan step in t")->capture_default_str();
  add_output_options(zeros_cmd, zeros.out, "txt", {"txt", "csv", "json", "pgm"});

  ExplicitArgs expl;
  auto* expl_cmd = zeta_cmd->add_subcommand("explicit", "Explicit formula vs the von Mangoldt sum");
  expl_cmd->add_option("--x", expl.x, "Evaluation point x > 1")->capture_default_str();
  add_zero_source(expl_cmd, expl.zeros);
  add_output_options(expl_cmd, expl.out, "csv", table_formats);

  QnmArgs qnm;
  auto* qnm_cmd = app.add_subcommand("qnm", "One-loop partition function and spacing fit of a QNM spectrum");
  add_spectrum_source(qnm_cmd, qnm.source);
  qnm_cmd->add_option("--delta", qnm.delta, "Evaluation point of Pol")->capture_default_str();
  qnm_cmd->add_option("--tail-fraction", qnm.tail_fraction, "Fraction of modes in the spacing fit")->capture_default_str();
  add_output_options(qnm_cmd, qnm.out, "csv", table_formats);

  QnmScanArgs qscan;
  auto* qscan_cmd = qnm_cmd->add_subcommand("scan", "Grid scan of the conjectured zero-product partition");
  add_spectrum_source(qscan_cmd, qscan.source);
  qscan_cmd->add_option("--pairing", qscan.pairing)->check(CLI::IsMember({"unpaired", "conjugate", "reflection"}));
  add_region(qscan_cmd, qscan.region);
  add_output_options(qscan_cmd, qscan.out, "csv", table_formats);

  ScanArgs scan;
  auto* scan_cmd = app.add_subcommand("scan", "Grid scan of a named evaluator");
  scan_cmd->add_option("--evaluator", scan.evaluator, "One of: oscillator_closed, oscillator_product, zeta_em, "
                                                      "zeta_hadamard, qnm_conjectured, affine_closed")
      ->required();
  scan_cmd->add_option("--e0", scan.params.e0)->capture_default_str();
  scan_cmd->add_option("--offset", scan.params.offset, "affine_closed ground level")->capture_default_str();
  scan_cmd->add_option("--gap", scan.params.gap, "affine_closed level spacing")->capture_default_str();
  scan_cmd->add_option("--factors", scan.params.n_factors)->capture_default_str();
  scan_cmd->add_flag("--no-tail", scan.no_tail);
  scan_cmd->add_option("--cutoff", scan.params.cutoff, "zeta_em cutoff (0: adaptive)")->capture_default_str();
  scan_cmd->add_option("--order", scan.params.correction_order)->capture_default_str();
  scan_cmd->add_option("--zero-count", scan.params.zero_count, "zeta_hadamard zeros used (0: all)");
  scan_cmd->add_option("--gamma-terms", scan.params.gamma_factor_terms)->capture_default_str();
  add_zero_source(scan_cmd, scan.zeros);
  add_spectrum_source(scan_cmd, scan.spectrum);
  scan_cmd->add_option("--pairing", scan.pairing)->check(CLI::IsMember({"unpaired", "conjugate", "reflection"}));
  add_region(scan_cmd, scan.region);
  add_output_options(scan_cmd, scan.out, "csv", table_formats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << active_command(app)->help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << active_command(app)->help();
    return 1;
  }

  const auto format_given = [](const CLI::App* cmd) { return cmd->count("--format") > 0; };
  const CLI::App* cmd = active_command(app);
  try {
    if (cmd == osc_cmd) run_oscillator(osc, format_given(cmd));
    else if (cmd == zeta_cmd) run_zeta(zeta, format_given(cmd));
    else if (cmd == zeros_cmd) run_zeros(zeros);
    else if (cmd == expl_cmd) run_explicit(expl, format_given(cmd));
    else if (cmd == qnm_cmd) run_qnm(qnm, format_given(cmd));
    else if (cmd == qscan_cmd) run_qnm_scan(qscan);
    else if (cmd == scan_cmd) run_scan(scan);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << cmd->help();
    return 1;
  } catch (const spz::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n\n" << cmd->help();
    return 1;
  } catch (const spz::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const spz::Error& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
