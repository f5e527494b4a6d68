#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "spineout/csv.hpp"
#include "spineout/dataset.hpp"
#include "spineout/decision_tree.hpp"
#include "spineout/error.hpp"
#include "spineout/preprocess.hpp"
#include "spineout/synthetic.hpp"

using namespace spineout;

namespace {

// CSV text of the first `rows` rows of a generated dataset.
std::string fixture_csv(std::size_t rows) {
  const Dataset d = generate_synthetic(20, 3, 0.8);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < rows; ++i) keep.push_back(i);
  return to_csv(select_rows(d, keep));
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

// Replaces field `col` of line `line` (0 = header).
std::string replace_field(const std::string& text, std::size_t line, std::size_t col, const std::string& value) {
  auto lines = split_lines(text);
  std::vector<std::string> fields;
  std::size_t start = 0;
  const std::string& l = lines[line];
  for (;;) {
    auto end = l.find(',', start);
    fields.push_back(l.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  fields[col] = value;
  std::string joined;
  for (std::size_t i = 0; i < fields.size(); ++i) joined += (i ? "," : "") + fields[i];
  lines[line] = joined;
  std::string out;
  for (const auto& x : lines) out += x + "\n";
  return out;
}

std::size_t csv_column(const std::string& name) {
  return *Schema::spine_default().find(name);
}

Dataset one_column(std::vector<double> values, ColumnKind kind = ColumnKind::Continuous) {
  Schema schema({{"v", kind, std::nullopt, ColumnRole::Presurgical},
                 {"label", ColumnKind::Binary, ValueRange{0, 1}, ColumnRole::Outcome}});
  const std::size_t n = values.size();
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<int>(i % 2);
  return make_dataset(schema, Matrix(n, 1, std::move(values)), y);
}

}  // namespace

TEST_SUITE("data_model") {
  TEST_CASE("csv with every schema column loads without drops") {
    const auto result = parse_csv(fixture_csv(3), Schema::spine_default());
    CHECK(result.data.n() == 3);
    CHECK(result.data.d() == 23);
    CHECK(result.report.dropped.empty());
    CHECK(result.report.rows_read == 3);
  }

  TEST_CASE("csv lacking ZUNG fails with MissingColumn naming it") {
    const std::string text = replace_field(fixture_csv(3), 0, csv_column("ZUNG"), "ZUNG_SCORE");
    try {
      parse_csv(text, Schema::spine_default());
      FAIL("expected MissingColumn");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MissingColumn);
      CHECK(std::string(e.what()).find("ZUNG") != std::string::npos);
    }
  }

  TEST_CASE("empty GLU in data row 4 drops exactly that row") {
    const std::string text = replace_field(fixture_csv(5), 4, csv_column("GLU"), "");
    const auto result = parse_csv(text, Schema::spine_default());
    CHECK(result.data.n() == 4);
    REQUIRE(result.report.dropped.size() == 1);
    CHECK(result.report.dropped[0].row == 4);
    CHECK(result.report.dropped[0].line == 5);
    CHECK(result.report.dropped[0].column == "GLU");
  }

  TEST_CASE("extra csv columns are ignored and column order is free") {
    const Schema schema = Schema::spine_default();
    const Dataset d = generate_synthetic(30, 5, 0.5);
    auto lines = split_lines(to_csv(d));
    std::string text;
    for (std::size_t i = 0; i < lines.size(); ++i) text += (i == 0 ? "NOTE," : "x,") + lines[i] + "\n";
    const auto loaded = parse_csv(text, schema);
    CHECK(loaded.data.x == d.x);
    CHECK(loaded.data.y == d.y);
  }

  TEST_CASE("malformed field count and empty result are errors") {
    auto lines = split_lines(fixture_csv(3));
    std::string text = lines[0] + "\n" + lines[1] + ",9\n";
    CHECK_THROWS_AS(parse_csv(text, Schema::spine_default()), Error);
    const std::string only_bad = replace_field(fixture_csv(1), 1, csv_column("AGE"), "abc");
    try {
      parse_csv(only_bad, Schema::spine_default());
      FAIL("expected EmptyAfterFiltering");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EmptyAfterFiltering);
    }
  }

  TEST_CASE("csv round trip is bit exact") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const Dataset d = generate_synthetic(200, seed, 0.7);
      const auto again = parse_csv(to_csv(d), d.schema);
      CHECK(again.data.x == d.x);
      CHECK(again.data.y == d.y);
      CHECK(to_csv(again.data) == to_csv(d));
    }
  }

  TEST_CASE("canonical number formatting") {
    CHECK(format_number(3.0) == "3");
    CHECK(format_number(-12.0) == "-12");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(95.69) == "95.69");
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
  }

  TEST_CASE("derive_success follows the both-at-most-one rule") {
    CHECK(derive_success(0, 1) == 1);
    CHECK(derive_success(1, 2) == 0);
    CHECK(derive_success(4, 4) == 0);
    CHECK_THROWS_AS(derive_success(5, 0), Error);
    CHECK_THROWS_AS(derive_success(0, -1), Error);
  }

  TEST_CASE("derive_success is monotone non-increasing in each argument") {
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4; ++b) {
        if (a < 4) CHECK(derive_success(a + 1, b) <= derive_success(a, b));
        if (b < 4) CHECK(derive_success(a, b + 1) <= derive_success(a, b));
      }
  }

  TEST_CASE("standardizer statistics") {
    std::vector<std::size_t> col{0};
    auto s = fit_standardizer(one_column({1, 2, 3}), col);
    CHECK(s.mean[0] == doctest::Approx(2.0));
    CHECK(s.stddev[0] == doctest::Approx(1.0));
    CHECK(s.standardize(0, 2.0) == 0.0);
    CHECK(s.standardize(0, 4.0) == doctest::Approx(2.0));
    const Dataset z = apply_standardizer(one_column({1, 2, 3}), s);
    CHECK(z.x(0, 0) == doctest::Approx(-1.0));
    CHECK(z.x(1, 0) == doctest::Approx(0.0));
    CHECK(z.x(2, 0) == doctest::Approx(1.0));

    s = fit_standardizer(one_column({5, 5, 5, 5}), col);
    CHECK(s.mean[0] == 5.0);
    CHECK(s.stddev[0] == 1.0);
    CHECK(s.constant[0]);

    s = fit_standardizer(one_column({2, 4, 4, 4, 5, 5, 7, 9}), col);
    CHECK(s.mean[0] == doctest::Approx(5.0));
    CHECK(s.stddev[0] == doctest::Approx(std::sqrt(32.0 / 7.0)).epsilon(1e-12));
    CHECK(s.stddev[0] == doctest::Approx(2.1381).epsilon(1e-4));

    CHECK_THROWS_AS(fit_standardizer(one_column({1}), col), Error);
  }

  TEST_CASE("standardized training columns have zero mean and unit sample sd") {
    const Dataset d = generate_synthetic(300, 11, 0.8);
    const auto cols = continuous_columns(d);
    const Dataset z = apply_standardizer(d, fit_standardizer(d, cols));
    for (std::size_t j : cols) {
      const auto v = z.x.column(j);
      double m = 0;
      for (double x : v) m += x;
      m /= v.size();
      double ss = 0;
      for (double x : v) ss += (x - m) * (x - m);
      CHECK(std::fabs(m) < 1e-9);
      CHECK(std::fabs(std::sqrt(ss / (v.size() - 1)) - 1.0) < 1e-9);
    }
  }

  TEST_CASE("min-max scaling clamps to the training range") {
    std::vector<std::size_t> col{0};
    auto s = fit_standardizer(one_column({0, 10}), col);
    CHECK(s.minmax(0, 5) == 0.5);
    CHECK(s.minmax(0, 12) == 1.0);
    CHECK(s.minmax(0, -3) == 0.0);
    s = fit_standardizer(one_column({70, 110}), col);
    CHECK(s.minmax(0, 90) == 0.5);
    const Dataset m = apply_minmax(one_column({70, 110}), s);
    CHECK(m.x(0, 0) == 0.0);
    CHECK(m.x(1, 0) == 1.0);
  }

  TEST_CASE("ordinal encoding ranks the distinct training codes") {
    auto enc = encode_ordinals(one_column({1, 3, 7}, ColumnKind::Ordinal));
    CHECK(enc.x.column(0) == std::vector<double>{0, 1, 2});
    enc = encode_ordinals(one_column({0, 1, 1, 0}, ColumnKind::Binary));
    CHECK(enc.x.column(0) == std::vector<double>{0, 1, 1, 0});
    enc = encode_ordinals(one_column({0, 2, 3}, ColumnKind::Ordinal));
    CHECK(enc.x.column(0) == std::vector<double>{0, 1, 2});

    const auto fitted = fit_ordinal_encoder(one_column({1, 3, 7}, ColumnKind::Ordinal));
    CHECK(fitted.encode(0, 5) == 1.0);  // unseen code falls to the rank below
    CHECK(fitted.encode(0, 0) == 0.0);
    CHECK(fitted.encode(0, 9) == 2.0);
    CHECK_THROWS_AS(fit_ordinal_encoder(one_column({1.5, 2}, ColumnKind::Ordinal)), Error);
  }

  TEST_CASE("group selection on the default schema") {
    const Dataset d = generate_synthetic(40, 1, 0.5);
    const Dataset g2 = select_group(d, builtin_group(GroupId::II));
    REQUIRE(g2.d() == 3);
    CHECK(g2.features()[0].name == "GEN");
    CHECK(g2.features()[1].name == "AGE");
    CHECK(g2.features()[2].name == "EMP_ST");
    const Dataset g4 = select_group(d, builtin_group(GroupId::IV));
    std::vector<std::string> names;
    for (const auto& c : g4.features()) names.push_back(c.name);
    CHECK(names == std::vector<std::string>{"GLU", "UREA", "URIC_ACID", "CREAT", "CHOL"});
    CHECK(select_group(d, builtin_group(GroupId::VII)).d() == 16);
    CHECK(select_group(d, builtin_group(GroupId::I)).d() == 5);
  }

  TEST_CASE("no group may select post-operative or satisfaction columns") {
    for (GroupId g : kAllGroups)
      for (const auto& name : builtin_group(g).column_names) {
        CHECK(name.rfind("M6_", 0) != 0);
        CHECK(name.rfind("SAT_", 0) != 0);
      }
    CHECK_THROWS_AS(make_group(GroupId::I, "bad", {"BMI", "M6_POST_ODI"}), Error);
    CHECK_THROWS_AS(make_group(GroupId::I, "bad", {"SAT_PAIN_6M"}), Error);
    CHECK_THROWS_AS(parse_group_id("VIII"), Error);
  }

  TEST_CASE("select_group reports the missing column") {
    const Dataset d = from_matrix(Matrix(4, 2, 1.0), {0, 1, 0, 1});
    try {
      select_group(d, builtin_group(GroupId::II));
      FAIL("expected MissingColumn");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MissingColumn);
    }
  }

  TEST_CASE("schema json round trip and validation") {
    const Schema s = Schema::spine_default();
    CHECK(schema_from_json(to_json(s)) == s);
    CHECK(s.columns().size() == 24);
    CHECK(s.outcome().name == "SUCCESS");
    auto j = to_json(s);
    j["columns"].push_back(j["columns"][0]);
    CHECK_THROWS_AS(schema_from_json(j), Error);
  }

  TEST_CASE("synthetic generator class balance and determinism") {
    const Dataset d = generate_synthetic(244, 7, 0.8);
    double pos = 0;
    for (int y : d.y) pos += y;
    CHECK(std::fabs(pos / 244.0 - 0.522) <= 0.03);
    const Dataset again = generate_synthetic(244, 7, 0.8);
    CHECK(again.x == d.x);
    CHECK(again.y == d.y);
    CHECK_THROWS_AS(generate_synthetic(19, 1, 0.5), Error);
  }

  TEST_CASE("generated values respect categorical ranges and success coding") {
    const Dataset d = generate_synthetic(500, 9, 0.8);
    const auto features = d.features();
    for (std::size_t j = 0; j < d.d(); ++j) {
      if (!features[j].categorical()) continue;
      for (double v : d.x.column(j)) {
        CHECK(v == std::floor(v));
        CHECK(features[j].valid_range->contains(v));
      }
    }
    const std::size_t s6 = *d.schema.find("SAT_SURGICAL_6M");
    const std::size_t p6 = *d.schema.find("SAT_PAIN_6M");
    // The outcome sits between them in the schema, so feature indices shift by one after it.
    const std::size_t out = d.schema.outcome_index();
    auto feat = [&](std::size_t schema_index) { return schema_index > out ? schema_index - 1 : schema_index; };
    for (std::size_t r = 0; r < d.n(); ++r)
      CHECK(derive_success(static_cast<int>(d.x(r, feat(s6))), static_cast<int>(d.x(r, feat(p6)))) == d.y[r]);
  }

  TEST_CASE("signal 0 leaves every feature uncorrelated with the label") {
    const Dataset d = generate_synthetic(1000, 21, 0.0);
    const auto features = d.features();
    for (std::size_t j = 0; j < d.d(); ++j) {
      if (features[j].role == ColumnRole::Satisfaction || features[j].role == ColumnRole::Postoperative) continue;
      const auto v = d.x.column(j);
      double mx = 0, my = 0;
      for (std::size_t r = 0; r < v.size(); ++r) {
        mx += v[r];
        my += d.y[r];
      }
      mx /= v.size();
      my /= v.size();
      double sxy = 0, sxx = 0, syy = 0;
      for (std::size_t r = 0; r < v.size(); ++r) {
        sxy += (v[r] - mx) * (d.y[r] - my);
        sxx += (v[r] - mx) * (v[r] - mx);
        syy += (d.y[r] - my) * (d.y[r] - my);
      }
      INFO(features[j].name);
      CHECK(std::fabs(sxy / std::sqrt(sxx * syy)) < 0.15);
    }
  }

  TEST_CASE("a shallow tree recovers the injected signal") {
    const Dataset d = generate_synthetic(10000, 4, 0.8);
    const Dataset g = select_group(d, builtin_group(GroupId::VII));
    std::vector<std::size_t> train, test;
    for (std::size_t r = 0; r < g.n(); ++r) (r % 4 == 0 ? test : train).push_back(r);
    const Dataset tr = select_rows(g, train), te = select_rows(g, test);
    TreeParams p;
    p.max_depth = 3;
    const DecisionTree tree = fit_decision_tree(tr.x, tr.y, p);
    std::size_t correct = 0, pos = 0;
    for (std::size_t r = 0; r < te.n(); ++r) {
      correct += predict(tree, te.x.row(r)).label == te.y[r] ? 1 : 0;
      pos += te.y[r];
    }
    const double majority = std::max(pos, te.n() - pos) / static_cast<double>(te.n());
    CHECK(correct / static_cast<double>(te.n()) > majority);
  }
}
