#pragma once

// Complex-plane grid scans of log Z with pole/zero detection.
//
// Every node gets log|Z| and arg Z. Nodes where the evaluator signals a hit
// are flagged directly. Singularities between nodes are found with the
// argument principle: the phase change around each grid cell (edges refined
// by bisection until each step is below pi/2) gives the net zero-minus-pole
// count inside the cell, and the corner nearest a local linear estimate of the
// singular point is flagged.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <memory>
#include <thread>
#include <vector>

#include "spectral_zeros/core_numerics.hpp"
#include "spectral_zeros/product_forms.hpp"
#include "spectral_zeros/qnm.hpp"
#include "spectral_zeros/spectra.hpp"
#include "spectral_zeros/zeta.hpp"

namespace spz {

inline constexpr double kLogAbsClamp = 745.0;

struct Region {
  double re_min = 0.0;
  double re_max = 1.0;
  double im_min = 0.0;
  double im_max = 1.0;
};

enum class NodeFlag { none, zero, pole };

inline const char* to_string(NodeFlag f) {
  switch (f) {
    case NodeFlag::zero: return "zero";
    case NodeFlag::pole: return "pole";
    case NodeFlag::none: break;
  }
  return "";
}

struct NodeSample {
  double log_abs = 0.0;
  double arg = 0.0;
  NodeFlag flag = NodeFlag::none;
};

/// Row-major samples; row 0 is im_min, column 0 is re_min, endpoints inclusive.
struct GridScan {
  Region region;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::vector<NodeSample> values;

  Complex node(std::size_t col, std::size_t row) const {
    const double re = region.re_min + (region.re_max - region.re_min) * static_cast<double>(col) / static_cast<double>(cols - 1);
    const double im = region.im_min + (region.im_max - region.im_min) * static_cast<double>(row) / static_cast<double>(rows - 1);
    return {re, im};
  }
  const NodeSample& at(std::size_t col, std::size_t row) const { return values[row * cols + col]; }
  double re_step() const { return (region.re_max - region.re_min) / static_cast<double>(cols - 1); }
  double im_step() const { return (region.im_max - region.im_min) / static_cast<double>(rows - 1); }
};

/// A named log Z evaluator. Throws PoleError / ZeroHitError / ZeroFactorError
/// at singular points; a log with real part -inf is also read as a zero.
struct ScanEvaluator {
  std::string name;
  std::function<Complex(Complex)> log_value;
};

struct EvaluatorParams {
  double e0 = 1.0;
  double offset = 0.0;  // affine_closed
  double gap = 1.0;     // affine_closed
  std::size_t n_factors = 1000;
  bool tail_correction = true;
  std::size_t cutoff = 0;  // zeta_em: 0 selects the adaptive rule
  int correction_order = 6;
  std::optional<ZetaZeroTable> zeros;
  std::size_t zero_count = 0;  // 0: whole table
  std::size_t gamma_factor_terms = 10'000;
  std::optional<QNMSpectrum> spectrum;
  std::optional<Pairing> pairing;
};

inline const std::vector<std::string>& evaluator_names() {
  static const std::vector<std::string> names = {"oscillator_closed", "oscillator_product", "zeta_em",
                                                 "zeta_hadamard",     "qnm_conjectured",    "affine_closed"};
  return names;
}

inline ScanEvaluator make_evaluator(const std::string& name, const EvaluatorParams& p) {
  if (name == "oscillator_closed") {
    if (!(p.e0 > 0.0)) throw InvalidArgument("oscillator_closed: E0 must be positive");
    return {name, [e0 = p.e0](Complex b) { return std::log(closed_form_oscillator(b, e0)); }};
  }
  if (name == "affine_closed") {
    if (!(p.gap > 0.0)) throw InvalidArgument("affine_closed: gap must be positive");
    return {name, [a = p.offset, d = p.gap](Complex b) { return std::log(closed_form_affine(b, a, d)); }};
  }
  if (name == "oscillator_product") {
    if (!(p.e0 > 0.0)) throw InvalidArgument("oscillator_product: E0 must be positive");
    if (p.n_factors < 1) throw InvalidArgument("oscillator_product: n_factors must be >= 1");
    return {name, [e0 = p.e0, n = p.n_factors, t = p.tail_correction](Complex b) {
              return pole_product_oscillator(b, e0, n, t).log_value;
            }};
  }
  if (name == "zeta_em") {
    if (p.cutoff != 0 && p.cutoff < 10) throw InvalidArgument("zeta_em: cutoff must be >= 10");
    if (p.correction_order < 1 || p.correction_order > 8) throw InvalidArgument("zeta_em: order must be in [1, 8]");
    return {name, [cutoff = p.cutoff, order = p.correction_order](Complex s) {
              const std::size_t n = cutoff == 0 ? adaptive_cutoff(s) : cutoff;
              return zeta_em(s, ZetaOptions{n, order}).log_value;
            }};
  }
  if (name == "zeta_hadamard") {
    if (!p.zeros) throw InvalidArgument("zeta_hadamard: a zero table is required");
    const std::size_t count = p.zero_count == 0 ? p.zeros->size() : p.zero_count;
    if (count > p.zeros->size()) throw InvalidArgument("zeta_hadamard: zero_count exceeds table size");
    return {name, [zeros = *p.zeros, count, m = p.gamma_factor_terms](Complex b) {
              return hadamard_product(b, zeros, count, m).log_value;
            }};
  }
  if (name == "qnm_conjectured") {
    if (!p.spectrum) throw InvalidArgument("qnm_conjectured: a QNM spectrum is required");
    const Pairing pairing = p.pairing.value_or(p.spectrum->symmetry == Symmetry::reflection ? Pairing::reflection_pairs
                                                                                            : Pairing::unpaired);
    auto partition = std::make_shared<ConjecturedPartition>(*p.spectrum, pairing);
    return {name, [partition](Complex z) { return (*partition)(z).log_value; }};
  }
  throw InvalidArgument("unknown evaluator '" + name + "'");
}

struct ScanOptions {
  std::size_t threads = 0;  // 0: SPECTRAL_ZEROS_THREADS, else hardware concurrency
  int max_refinement = 12;  // edge bisection depth for the phase integral
};

/// Worker count: SPECTRAL_ZEROS_THREADS if set to a positive integer, else the hardware concurrency.
inline std::size_t default_thread_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SPECTRAL_ZEROS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) n = static_cast<std::size_t>(v);
  }
  return n;
}

namespace detail {

struct Sample {
  Complex log_value;
  NodeFlag hit = NodeFlag::none;
};

inline Sample sample(const ScanEvaluator& ev, Complex z) {
  try {
    const Complex lv = ev.log_value(z);
    if (std::isinf(lv.real()) && lv.real() < 0.0) return {lv, NodeFlag::zero};
    if (!std::isfinite(lv.real()) || !std::isfinite(lv.imag())) return {lv, NodeFlag::pole};
    return {lv, NodeFlag::none};
  } catch (const PoleError&) {
    return {{}, NodeFlag::pole};
  } catch (const ZeroHitError&) {
    return {{}, NodeFlag::zero};
  } catch (const ZeroFactorError&) {
    return {{}, NodeFlag::zero};
  }
}

struct EdgePhase {
  double delta = 0.0;
  bool valid = true;
  std::optional<std::pair<Complex, NodeFlag>> hit;  // singular point met while refining
};

inline void refine_edge(const ScanEvaluator& ev, Complex za, double arg_a, Complex zb, double arg_b, int depth,
                        EdgePhase& out) {
  const double delta = principal_angle(arg_b - arg_a);
  if (std::abs(delta) <= 0.5 * kPi || depth <= 0) {
    out.delta += delta;
    return;
  }
  const Complex zm = 0.5 * (za + zb);
  const Sample s = sample(ev, zm);
  if (s.hit != NodeFlag::none) {
    out.valid = false;
    out.hit = std::make_pair(zm, s.hit);
    return;
  }
  refine_edge(ev, za, arg_a, zm, s.log_value.imag(), depth - 1, out);
  if (!out.valid) return;
  refine_edge(ev, zm, s.log_value.imag(), zb, arg_b, depth - 1, out);
}

// Singular point inside a cell with winding w: Z^{1/w} is close to linear there,
// so fit g = exp((log Z - log Z_00)/w) through three corners and solve g = 0.
// Argument differences come from the refined edge phases, not the node branches.
inline std::optional<Complex> locate_in_cell(Complex l00, Complex l10, Complex l01, double bottom_phase,
                                             double left_phase, double winding, Complex z00, double h_re,
                                             double h_im) {
  const Complex g10 = std::exp(Complex(l10.real() - l00.real(), bottom_phase) / winding);
  const Complex g01 = std::exp(Complex(l01.real() - l00.real(), left_phase) / winding);
  const Complex slope = 0.5 * ((g10 - 1.0) / h_re + (g01 - 1.0) / Complex(0.0, h_im));
  const Complex z0 = z00 - 1.0 / slope;
  if (!std::isfinite(z0.real()) || !std::isfinite(z0.imag())) return std::nullopt;
  return z0;
}

// Runs job(i) for i in [0, n) on `threads` workers; rethrows the lowest-index failure.
template <typename Job>
void parallel_for(std::size_t n, std::size_t threads, Job job) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/// Evaluate log Z on a cols x rows node lattice covering `region` and flag poles and zeros.
inline GridScan grid_scan(const ScanEvaluator& ev, Region region, std::size_t cols, std::size_t rows,
                          ScanOptions opt = {}) {
  if (!(region.re_min < region.re_max) || !(region.im_min < region.im_max)) {
    throw InvalidArgument("grid_scan: region must satisfy re_min < re_max and im_min < im_max");
  }
  if (cols < 2 || rows < 2) throw InvalidArgument("grid_scan: resolution must be at least 2 x 2");
  const std::size_t threads = opt.threads == 0 ? default_thread_count() : opt.threads;

  GridScan scan;
  scan.region = region;
  scan.cols = cols;
  scan.rows = rows;
  scan.values.resize(cols * rows);
  std::vector<detail::Sample> raw(cols * rows);

  detail::parallel_for(rows, threads, [&](std::size_t j) {
    for (std::size_t i = 0; i < cols; ++i) raw[j * cols + i] = detail::sample(ev, scan.node(i, j));
  });

  // Phase change along horizontal edges (i -> i+1 in row j) and vertical edges (j -> j+1 in column i).
  std::vector<detail::EdgePhase> h_edges((cols - 1) * rows);
  std::vector<detail::EdgePhase> v_edges(cols * (rows - 1));
  auto edge = [&](std::size_t a, std::size_t b, Complex za, Complex zb, detail::EdgePhase& out) {
    if (raw[a].hit != NodeFlag::none || raw[b].hit != NodeFlag::none) {
      out.valid = false;
      return;
    }
    detail::refine_edge(ev, za, raw[a].log_value.imag(), zb, raw[b].log_value.imag(), opt.max_refinement, out);
  };
  detail::parallel_for(rows, threads, [&](std::size_t j) {
    for (std::size_t i = 0; i + 1 < cols; ++i) {
      edge(j * cols + i, j * cols + i + 1, scan.node(i, j), scan.node(i + 1, j), h_edges[j * (cols - 1) + i]);
    }
    if (j + 1 < rows) {
      for (std::size_t i = 0; i < cols; ++i) {
        edge(j * cols + i, (j + 1) * cols + i, scan.node(i, j), scan.node(i, j + 1), v_edges[j * cols + i]);
      }
    }
  });

  for (std::size_t k = 0; k < raw.size(); ++k) {
    auto& out = scan.values[k];
    out.flag = raw[k].hit;
    if (raw[k].hit == NodeFlag::zero) {
      out.log_abs = -kLogAbsClamp;
    } else if (raw[k].hit == NodeFlag::pole) {
      out.log_abs = kLogAbsClamp;
    } else {
      out.log_abs = std::clamp(raw[k].log_value.real(), -kLogAbsClamp, kLogAbsClamp);
      out.arg = principal_angle(raw[k].log_value.imag());
    }
  }

  auto flag_node = [&](std::size_t k, NodeFlag f) {
    if (scan.values[k].flag == NodeFlag::none) scan.values[k].flag = f;
  };

  // Singular points met during edge refinement: flag the nearest node.
  for (const auto* edges : {&h_edges, &v_edges}) {
    for (const auto& e : *edges) {
      if (!e.hit) continue;
      const Complex z = e.hit->first;
      const auto col = static_cast<std::size_t>(std::lround((z.real() - region.re_min) / scan.re_step()));
      const auto row = static_cast<std::size_t>(std::lround((z.imag() - region.im_min) / scan.im_step()));
      flag_node(std::min(row, rows - 1) * cols + std::min(col, cols - 1), e.hit->second);
    }
  }

  for (std::size_t j = 0; j + 1 < rows; ++j) {
    for (std::size_t i = 0; i + 1 < cols; ++i) {
      const auto& bottom = h_edges[j * (cols - 1) + i];
      const auto& top = h_edges[(j + 1) * (cols - 1) + i];
      const auto& left = v_edges[j * cols + i];
      const auto& right = v_edges[j * cols + i + 1];
      if (!bottom.valid || !top.valid || !left.valid || !right.valid) continue;
      const double total = bottom.delta + right.delta - top.delta - left.delta;
      const long winding = std::lround(total / kTwoPi);
      if (winding == 0) continue;
      const std::size_t corners[] = {j * cols + i, j * cols + i + 1, (j + 1) * cols + i, (j + 1) * cols + i + 1};
      std::size_t pick = corners[0];
      if (const auto z0 = detail::locate_in_cell(raw[corners[0]].log_value, raw[corners[1]].log_value,
                                                 raw[corners[2]].log_value, bottom.delta, left.delta,
                                                 static_cast<double>(winding), scan.node(i, j), scan.re_step(),
                                                 scan.im_step())) {
        double best = INFINITY;
        for (std::size_t c : corners) {
          const Complex d = scan.node(c % cols, c / cols) - *z0;
          const double dist = std::hypot(d.real() / scan.re_step(), d.imag() / scan.im_step());
          if (dist < best) {
            best = dist;
            pick = c;
          }
        }
      } else {
        for (std::size_t c : corners) {
          const bool better = winding > 0 ? scan.values[c].log_abs < scan.values[pick].log_abs
                                          : scan.values[c].log_abs > scan.values[pick].log_abs;
          if (better) pick = c;
        }
      }
      flag_node(pick, winding > 0 ? NodeFlag::zero : NodeFlag::pole);
    }
  }
  return scan;
}

/// Node positions carrying `flag`.
inline std::vector<Complex> flagged_nodes(const GridScan& scan, NodeFlag flag) {
  std::vector<Complex> out;
  for (std::size_t j = 0; j < scan.rows; ++j) {
    for (std::size_t i = 0; i < scan.cols; ++i) {
      if (scan.at(i, j).flag == flag) out.push_back(scan.node(i, j));
    }
  }
  return out;
}

}  // namespace spz
