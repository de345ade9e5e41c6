#include <gtest/gtest.h>

#include <charconv>
#include <fstream>
#include <sstream>

#include "spectral_zeros/io.hpp"

namespace spz {
namespace {

std::string temp_path(const std::string& name) { return ::testing::TempDir() + "spz_io_" + name; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  EXPECT_EQ(res.ec, std::errc()) << s;
  return v;
}

GridScan ramp_scan(std::size_t cols, std::size_t rows) {
  GridScan scan;
  scan.region = Region{0.0, 1.0, 0.0, 1.0};
  scan.cols = cols;
  scan.rows = rows;
  for (std::size_t j = 0; j < rows; ++j) {
    for (std::size_t i = 0; i < cols; ++i) scan.values.push_back({static_cast<double>(j * cols + i), 0.25, NodeFlag::none});
  }
  return scan;
}

TEST(ZeroSetJson, RoundTrip) {
  const ZeroSet zs({{Complex(0.1, 2.0 / 3.0), 2, ZeroKind::zero},
                    {Complex(0.1, -2.0 / 3.0), 2, ZeroKind::zero},
                    {Complex(-3.5, 0.0), 1, ZeroKind::pole}},
                   Symmetry::conjugate);
  const json j = zero_set_to_json(zs);
  EXPECT_EQ(j.at("symmetry"), "conjugate");
  EXPECT_EQ(j.at("entries").size(), 3u);
  const ZeroSet back = zero_set_from_json(json::parse(j.dump()));
  ASSERT_EQ(back.size(), zs.size());
  EXPECT_EQ(back.symmetry(), Symmetry::conjugate);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    EXPECT_EQ(back.entries()[i].location, zs.entries()[i].location);
    EXPECT_EQ(back.entries()[i].multiplicity, zs.entries()[i].multiplicity);
    EXPECT_EQ(back.entries()[i].kind, zs.entries()[i].kind);
  }
}

TEST(ZeroSetJson, Errors) {
  EXPECT_THROW(zero_set_from_json(json::parse(R"({"entries": [[1, 2, 1]]})")), ParseError);
  EXPECT_THROW(zero_set_from_json(json::parse(R"({"entries": [[1, 2, 1, "hole"]]})")), ParseError);
  EXPECT_THROW(zero_set_from_json(json::parse(R"({"entries": [[1, "x", 1, "zero"]]})")), ParseError);
  EXPECT_THROW(zero_set_from_json(json::parse(R"({"entries": [], "symmetry": "mirror"})")), ParseError);
  EXPECT_THROW(zero_set_from_json(json::parse(R"({"zeros": []})")), ParseError);
  EXPECT_THROW(zero_set_from_json(json::parse(R"({"entries": [[1, 2, 1, "zero"]], "symmetry": "conjugate"})")),
               InvalidArgument);
  EXPECT_EQ(zero_set_from_json(json::parse(R"({"entries": [[1, 2, 1, "zero"]]})")).symmetry(), Symmetry::none);
}

TEST(QnmJson, RoundTripAndDefaults) {
  auto spec = synthetic_reflection_spectrum(3, 0.7, -0.5, -1.0, 0.25, 1.5);
  spec.pol_coefficients = {0.5, -1.0};
  const QNMSpectrum back = qnm_spectrum_from_json(json::parse(qnm_spectrum_to_json(spec).dump()));
  EXPECT_EQ(back.modes, spec.modes);
  EXPECT_EQ(back.temperature, 0.25);
  EXPECT_EQ(back.euclidean_action, 1.5);
  EXPECT_EQ(back.pol_coefficients, spec.pol_coefficients);
  EXPECT_EQ(back.symmetry, Symmetry::reflection);

  const auto minimal = qnm_spectrum_from_json(json::parse(R"({"modes": [[1, -1], [2, -2]], "temperature": 2})"));
  EXPECT_EQ(minimal.modes.size(), 2u);
  EXPECT_TRUE(minimal.pol_coefficients.empty());
  EXPECT_EQ(minimal.euclidean_action, 0.0);
  EXPECT_EQ(minimal.symmetry, Symmetry::none);
}

TEST(QnmJson, Errors) {
  EXPECT_THROW(qnm_spectrum_from_json(json::parse(R"({"modes": [[1, -1]]})")), ParseError);
  EXPECT_THROW(qnm_spectrum_from_json(json::parse(R"({"modes": [[1, -1, 0]], "temperature": 1})")), ParseError);
  EXPECT_THROW(qnm_spectrum_from_json(json::parse(R"({"modes": [[0, 0]], "temperature": 1})")), ParseError);
  EXPECT_THROW(qnm_spectrum_from_json(json::parse(R"({"modes": [], "temperature": 1})")), ParseError);
  EXPECT_THROW(
      qnm_spectrum_from_json(json::parse(R"({"modes": [[1, -1]], "temperature": 1, "symmetry": "reflection"})")),
      ParseError);
}

TEST(QnmJson, Files) {
  const std::string good = temp_path("spectrum.json");
  write_file(good, R"({"modes": [[0.5, -1.0], [-0.5, -1.0]], "temperature": 1.0, "symmetry": "reflection"})");
  const auto spec = load_qnm_spectrum(good);
  EXPECT_EQ(spec.modes.size(), 2u);
  EXPECT_EQ(spec.symmetry, Symmetry::reflection);

  const std::string bad = temp_path("broken.json");
  write_file(bad, "{\"modes\": [[0.5, -1.0]");
  EXPECT_THROW(load_qnm_spectrum(bad), ParseError);
  EXPECT_THROW(load_qnm_spectrum(temp_path("missing.json")), ParseError);
}

TEST(ZeroTables, TextRoundTrip) {
  const ZetaZeroTable table({14.134725141734694, 21.022039638771555, 25.010857580145689}, ZeroSource::computed);
  std::ostringstream text;
  write_zeros_text(text, table);
  EXPECT_EQ(text.str(), "14.134725141735\n21.022039638772\n25.010857580146\n");
  const std::string path = temp_path("zeros.txt");
  write_file(path, text.str());
  const auto back = ingest_zeros_file(path);
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(back[i], table[i], 1e-12);

  std::ostringstream csv;
  write_zeros_csv(csv, table);
  EXPECT_EQ(split(csv.str(), '\n')[0], "index,ordinate");
  EXPECT_EQ(split(csv.str(), '\n')[1], "1,14.134725141735");

  std::ostringstream js;
  write_zeros_json(js, table);
  const json j = json::parse(js.str());
  EXPECT_EQ(j.at("ordinates").size(), 3u);
  EXPECT_EQ(j.at("source"), "computed");
  EXPECT_EQ(j.at("ordinates")[0].get<double>(), table[0]);
}

TEST(ScanCsv, SchemaAndRoundTrip) {
  const auto ev = make_evaluator("oscillator_closed", EvaluatorParams{});
  const auto scan = grid_scan(ev, Region{-0.5, 0.5, kTwoPi - 0.5, kTwoPi + 0.5}, 11, 11);
  std::ostringstream out;
  write_scan_csv(out, scan);
  const auto lines = split(out.str(), '\n');
  ASSERT_EQ(lines.size(), 11u * 11u + 2u);  // header, rows, trailing empty
  EXPECT_EQ(lines[0], "re,im,log_abs,arg,flag");
  EXPECT_EQ(lines.back(), "");
  std::size_t poles = 0;
  for (std::size_t k = 0; k < scan.values.size(); ++k) {
    const auto fields = split(lines[k + 1], ',');
    ASSERT_EQ(fields.size(), 5u);
    const std::size_t i = k % scan.cols, j = k / scan.cols;
    EXPECT_EQ(parse_double(fields[0]), scan.node(i, j).real());
    EXPECT_EQ(parse_double(fields[1]), scan.node(i, j).imag());
    EXPECT_EQ(parse_double(fields[2]), scan.values[k].log_abs);
    EXPECT_EQ(parse_double(fields[3]), scan.values[k].arg);
    EXPECT_EQ(fields[4], to_string(scan.values[k].flag));
    if (fields[4] == "pole") {
      ++poles;
      EXPECT_EQ(fields[2], "745");
    }
  }
  EXPECT_GE(poles, 1u);
}

TEST(ScanJson, MetaSuppression) {
  const auto scan = ramp_scan(3, 2);
  const json with = scan_to_json(scan, "oscillator_closed", true);
  const json without = scan_to_json(scan, "oscillator_closed", false);
  EXPECT_TRUE(with.contains("meta"));
  EXPECT_FALSE(without.contains("meta"));
  EXPECT_EQ(without.at("nodes").size(), 6u);
  EXPECT_EQ(without.at("resolution"), json::array({3, 2}));
  EXPECT_EQ(without.at("evaluator"), "oscillator_closed");
  EXPECT_EQ(without.at("nodes")[4][2].get<double>(), 4.0);

  std::ostringstream a, b;
  write_scan_json(a, scan, "x", false);
  write_scan_json(b, scan, "x", false);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Pgm, HeaderOrientationAndScaling) {
  const auto scan = ramp_scan(4, 3);  // log_abs = 0..11 in row-major order
  std::ostringstream out;
  write_scan_pgm(out, scan);
  const std::string bytes = out.str();
  const std::string header = "P5\n4 3\n255\n";
  ASSERT_EQ(bytes.size(), header.size() + 12u);
  EXPECT_EQ(bytes.substr(0, header.size()), header);
  const auto pixel = [&](std::size_t r, std::size_t c) {
    return static_cast<unsigned char>(bytes[header.size() + r * 4 + c]);
  };
  // p5 = 1, p95 = 10 by nearest rank over 12 values
  EXPECT_EQ(percentile({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 0.05), 1.0);
  EXPECT_EQ(percentile({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 0.95), 10.0);
  // bottom image row is im_min (log_abs 0..3), top row im_max (8..11)
  EXPECT_EQ(pixel(2, 0), 0);
  EXPECT_EQ(pixel(2, 1), 0);
  EXPECT_EQ(pixel(2, 2), static_cast<unsigned char>(std::lround(255.0 / 9.0)));
  EXPECT_EQ(pixel(0, 2), 255);
  EXPECT_EQ(pixel(0, 3), 255);
  EXPECT_EQ(pixel(1, 1), static_cast<unsigned char>(std::lround(255.0 * 4.0 / 9.0)));
}

TEST(Pgm, FlatField) {
  GridScan scan = ramp_scan(2, 2);
  for (auto& v : scan.values) v.log_abs = 3.0;
  std::ostringstream out;
  write_scan_pgm(out, scan);
  const std::string bytes = out.str();
  EXPECT_EQ(bytes.substr(bytes.size() - 4), std::string(4, '\0'));
}

TEST(Percentile, Edges) {
  EXPECT_EQ(percentile({}, 0.5), 0.0);
  EXPECT_EQ(percentile({7.0}, 0.05), 7.0);
  EXPECT_EQ(percentile({3.0, 1.0, 2.0}, 0.0), 1.0);
  EXPECT_EQ(percentile({3.0, 1.0, 2.0}, 1.0), 3.0);
}

TEST(SymmetryTags, RoundTrip) {
  for (Symmetry s : {Symmetry::none, Symmetry::conjugate, Symmetry::reflection}) {
    EXPECT_EQ(symmetry_from_string(to_string(s)), s);
  }
  EXPECT_THROW(symmetry_from_string("both"), ParseError);
}

}  // namespace
}  // namespace spz
