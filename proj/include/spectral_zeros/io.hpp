#pragma once

// File formats: ZeroSet and QNM spectrum JSON, zero tables, and grid-scan
// CSV / JSON / PGM output. All writers are deterministic: numbers use the
// shortest round-trip representation and no timestamps are emitted.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "spectral_zeros/grid_scan.hpp"
#include "spectral_zeros/product_forms.hpp"
#include "spectral_zeros/qnm.hpp"
#include "spectral_zeros/zeta.hpp"

namespace spz {

using json = nlohmann::json;

inline const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::conjugate: return "conjugate";
    case Symmetry::reflection: return "reflection";
    case Symmetry::none: break;
  }
  return "none";
}

inline Symmetry symmetry_from_string(const std::string& s) {
  if (s == "none") return Symmetry::none;
  if (s == "conjugate") return Symmetry::conjugate;
  if (s == "reflection") return Symmetry::reflection;
  throw ParseError("unknown symmetry tag '" + s + "'", 0);
}

// --- ZeroSet -----------------------------------------------------------------

inline json zero_set_to_json(const ZeroSet& zeros) {
  json entries = json::array();
  for (const auto& e : zeros.entries()) {
    entries.push_back({e.location.real(), e.location.imag(), e.multiplicity,
                       e.kind == ZeroKind::zero ? "zero" : "pole"});
  }
  return {{"entries", entries}, {"symmetry", to_string(zeros.symmetry())}};
}

inline ZeroSet zero_set_from_json(const json& j) {
  try {
    std::vector<ZeroEntry> entries;
    for (const auto& item : j.at("entries")) {
      if (!item.is_array() || item.size() != 4) throw ParseError("ZeroSet entry must be [re, im, multiplicity, kind]", 0);
      const std::string kind = item.at(3).get<std::string>();
      if (kind != "zero" && kind != "pole") throw ParseError("ZeroSet entry kind must be \"zero\" or \"pole\"", 0);
      entries.push_back({Complex(item.at(0).get<double>(), item.at(1).get<double>()), item.at(2).get<int>(),
                         kind == "zero" ? ZeroKind::zero : ZeroKind::pole});
    }
    const Symmetry sym = j.contains("symmetry") ? symmetry_from_string(j.at("symmetry").get<std::string>())
                                                : Symmetry::none;
    return ZeroSet(std::move(entries), sym);
  } catch (const json::exception& e) {
    throw ParseError(std::string("ZeroSet JSON: ") + e.what(), 0);
  }
}

// --- QNM spectrum --------------------------------------------------------------

inline json qnm_spectrum_to_json(const QNMSpectrum& spec) {
  json modes = json::array();
  for (Complex z : spec.modes) modes.push_back({z.real(), z.imag()});
  return {{"modes", modes},
          {"temperature", spec.temperature},
          {"pol", spec.pol_coefficients},
          {"action", spec.euclidean_action},
          {"symmetry", to_string(spec.symmetry)}};
}

/// {"modes": [[re, im], ...], "temperature": T, "pol": [c0, ...], "action": S_E, "symmetry": "none"|"reflection"}.
/// pol, action and symmetry are optional (defaults [], 0, "none").
inline QNMSpectrum qnm_spectrum_from_json(const json& j) {
  QNMSpectrum spec;
  try {
    for (const auto& m : j.at("modes")) {
      if (!m.is_array() || m.size() != 2) throw ParseError("QNM mode must be [re, im]", 0);
      spec.modes.emplace_back(m.at(0).get<double>(), m.at(1).get<double>());
    }
    spec.temperature = j.at("temperature").get<double>();
    if (j.contains("pol")) spec.pol_coefficients = j.at("pol").get<std::vector<double>>();
    if (j.contains("action")) spec.euclidean_action = j.at("action").get<double>();
    if (j.contains("symmetry")) spec.symmetry = symmetry_from_string(j.at("symmetry").get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("QNM spectrum JSON: ") + e.what(), 0);
  }
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("QNM spectrum JSON: ") + e.what(), 0);
  }
  return spec;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

inline QNMSpectrum load_qnm_spectrum(const std::string& path) { return qnm_spectrum_from_json(read_json_file(path)); }

// --- zero tables --------------------------------------------------------------

/// One ordinate per line, readable by ingest_zeros_file.
inline void write_zeros_text(std::ostream& out, const ZetaZeroTable& table) {
  for (double g : table.ordinates()) out << fmt::format("{:.12f}\n", g);
}

inline void write_zeros_csv(std::ostream& out, const ZetaZeroTable& table) {
  out << "index,ordinate\n";
  for (std::size_t i = 0; i < table.size(); ++i) out << fmt::format("{},{:.12f}\n", i + 1, table[i]);
}

inline void write_zeros_json(std::ostream& out, const ZetaZeroTable& table) {
  json j = {{"ordinates", table.ordinates()},
            {"source", table.source() == ZeroSource::computed ? "computed" : "file"}};
  out << j.dump(2) << '\n';
}

// --- grid scans ---------------------------------------------------------------

/// Header `re,im,log_abs,arg,flag`, one row per node in row-major order.
inline void write_scan_csv(std::ostream& out, const GridScan& scan) {
  out << "re,im,log_abs,arg,flag\n";
  for (std::size_t j = 0; j < scan.rows; ++j) {
    for (std::size_t i = 0; i < scan.cols; ++i) {
      const Complex z = scan.node(i, j);
      const auto& v = scan.at(i, j);
      out << fmt::format("{},{},{},{},{}\n", z.real(), z.imag(), v.log_abs, v.arg, to_string(v.flag));
    }
  }
}

inline json scan_to_json(const GridScan& scan, const std::string& evaluator, bool include_meta) {
  json nodes = json::array();
  for (std::size_t j = 0; j < scan.rows; ++j) {
    for (std::size_t i = 0; i < scan.cols; ++i) {
      const Complex z = scan.node(i, j);
      const auto& v = scan.at(i, j);
      nodes.push_back({z.real(), z.imag(), v.log_abs, v.arg, to_string(v.flag)});
    }
  }
  json j = {{"evaluator", evaluator},
            {"region",
             {{"re_min", scan.region.re_min},
              {"re_max", scan.region.re_max},
              {"im_min", scan.region.im_min},
              {"im_max", scan.region.im_max}}},
            {"resolution", {scan.cols, scan.rows}},
            {"nodes", nodes}};
  if (include_meta) {
    j["meta"] = {{"generator", "spectral_zeros"}, {"schema", "re,im,log_abs,arg,flag"}};
  }
  return j;
}

inline void write_scan_json(std::ostream& out, const GridScan& scan, const std::string& evaluator, bool include_meta) {
  out << scan_to_json(scan, evaluator, include_meta).dump(1) << '\n';
}

/// Nearest-rank percentile, q in [0, 1].
inline double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(values.size() - 1) + 0.5));
  return values[std::min(idx, values.size() - 1)];
}

/// Binary PGM (P5) heatmap of log|Z|: [p5, p95] mapped linearly onto 0..255,
/// top image row = im_max.
inline void write_scan_pgm(std::ostream& out, const GridScan& scan) {
  std::vector<double> levels;
  levels.reserve(scan.values.size());
  for (const auto& v : scan.values) levels.push_back(v.log_abs);
  const double lo = percentile(levels, 0.05);
  const double hi = percentile(levels, 0.95);
  out << "P5\n" << scan.cols << ' ' << scan.rows << "\n255\n";
  std::vector<char> row(scan.cols);
  for (std::size_t r = 0; r < scan.rows; ++r) {
    const std::size_t j = scan.rows - 1 - r;
    for (std::size_t i = 0; i < scan.cols; ++i) {
      double level = 0.0;
      if (hi > lo) level = (std::clamp(scan.at(i, j).log_abs, lo, hi) - lo) / (hi - lo);
      row[i] = static_cast<char>(static_cast<unsigned char>(std::lround(level * 255.0)));
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

}  // namespace spz
