#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "wfc/analysis.hpp"
#include "wfc_cli/sweep.hpp"
#include "wfc_cli/table.hpp"

namespace wfc::cli {
namespace {

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return i;
  }
  throw std::out_of_range("no column " + name);
}

double at(const Table& t, std::size_t row, const std::string& name) {
  return t.rows[row][column(t, name)].value();
}

TEST(FormatNumber, NineSignificantDigits) {
  EXPECT_EQ(format_number(0.578125), "0.578125");
  EXPECT_EQ(format_number(2.0 / 3.0), "0.666666667");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1e-12), "1e-12");
}

TEST(Table, CsvAndJsonShapes) {
  const Table t{{"a", "b"}, {{1.5, std::nullopt}, {0.0, 2.0}}};
  EXPECT_EQ(to_csv(t), "a,b\n1.5,NA\n0,2\n");
  const std::string json = to_json(t);
  EXPECT_NE(json.find("\"a\": 1.5"), std::string::npos) << json;
  EXPECT_NE(json.find("\"b\": null"), std::string::npos) << json;
  EXPECT_EQ(json.back(), '\n');
}

TEST(Table, AtomicWriteLeavesNoTemporary) {
  const auto dir = std::filesystem::temp_directory_path() / "wfc_test_sweep";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  write_atomic(path, "x\n1\n");
  write_atomic(path, "x\n2\n");
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), "x\n2\n");
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  EXPECT_THROW(write_atomic(dir / "missing" / "out.csv", "x"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST(ParseAxis, RangeAndList) {
  const Axis r = parse_axis("tau=0:1:5");
  EXPECT_EQ(r.name, "tau");
  EXPECT_EQ(r.values, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  const Axis l = parse_axis("n=2,3,8");
  EXPECT_EQ(l.values, (std::vector<double>{2.0, 3.0, 8.0}));
  EXPECT_THROW(parse_axis("tau"), std::invalid_argument);
  EXPECT_THROW(parse_axis("tau=0:1"), std::invalid_argument);
  EXPECT_THROW(parse_axis("tau=0:1:2.5"), std::invalid_argument);
  EXPECT_THROW(parse_axis("tau=a,b"), std::invalid_argument);
}

TEST(SweepSpec, Validation) {
  SweepSpec s = default_spec(FigureId::kFig3a);
  EXPECT_NO_THROW(validate(s));
  EXPECT_THROW(override_axis(s, parse_axis("tau=0:1:3")), std::invalid_argument);

  s.axes = {Axis{"n", {2.0}}};
  EXPECT_THROW(validate(s), std::invalid_argument);
  s.axes = {Axis{"n", {2.0, 2.5}}};
  EXPECT_THROW(validate(s), std::invalid_argument);
  s.axes = {Axis{"n", {1.0, 2.0}}};
  EXPECT_THROW(validate(s), std::invalid_argument);

  SweepSpec c = default_spec(FigureId::kFig3c);
  EXPECT_NO_THROW(validate(c));  // e = 0 is fine for the early limit alone
  c.sim = SimConfig{};
  EXPECT_THROW(validate(c), std::invalid_argument);

  SweepSpec f1 = default_spec(FigureId::kFig1);
  f1.sim = SimConfig{};
  EXPECT_THROW(validate(f1), std::invalid_argument);
  f1.sim.reset();
  f1.axes[0] = linspace_axis("ewc", 0.0, 1.5, 3);
  EXPECT_THROW(validate(f1), std::invalid_argument);

  SweepSpec custom = default_spec(FigureId::kCustom);
  EXPECT_THROW(validate(custom), std::invalid_argument);
  override_axis(custom, parse_axis("mu=0,1"));
  EXPECT_THROW(validate(custom), std::invalid_argument);
}

TEST(RunSweep, Fig1Grid) {
  const Table t = run_sweep(default_spec(FigureId::kFig1));
  EXPECT_EQ(t.columns, figure_columns(FigureId::kFig1, false));
  ASSERT_EQ(t.rows.size(), 201u * 201u);
  bool found = false;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (std::abs(at(t, r, "e_wc") - 0.3) < 1e-12 && at(t, r, "tau") == 1.0) {
      EXPECT_GT(at(t, r, "expected_payoff"), 0.578125);
      EXPECT_EQ(at(t, r, "rational"), 1.0);
      found = true;
    }
    EXPECT_EQ(at(t, r, "baseline_payoff"), 0.578125);
  }
  EXPECT_TRUE(found);
}

// Along tau > 0 at fixed e_wc the verdict flips at most once, next to the
// indifference tau. tau = 0 is the no-clause game itself and always rational.
void expect_single_flip(const Table& t, std::size_t tau_steps) {
  const double step = 1.0 / static_cast<double>(tau_steps - 1);
  for (std::size_t start = 0; start < t.rows.size(); start += tau_steps) {
    const std::string where = "n=" + format_number(at(t, start, "n")) +
                              " e_wc=" + format_number(at(t, start, "e_wc"));
    ASSERT_EQ(at(t, start, "tau"), 0.0);
    ASSERT_EQ(at(t, start, "rational"), 1.0) << where;
    int flips = 0;
    double flip_tau = -1.0;
    for (std::size_t k = 2; k < tau_steps; ++k) {
      if (at(t, start + k, "rational") != at(t, start + k - 1, "rational")) {
        ++flips;
        flip_tau = at(t, start + k, "tau");
      }
    }
    ASSERT_LE(flips, 1) << where;
    const auto& ind = t.rows[start][column(t, "indifference_tau")];
    const bool all_rational = at(t, start + 1, "rational") == 1.0;
    if (flips == 1) {
      ASSERT_TRUE(ind.has_value()) << where;
      EXPECT_LE(std::abs(flip_tau - *ind), step + 1e-12) << where;
    } else if (all_rational) {
      EXPECT_TRUE(!ind || *ind >= 1.0 - step) << where;
    } else {
      ASSERT_TRUE(ind.has_value()) << where;
      EXPECT_LE(*ind, step) << where;
    }
  }
}

TEST(RunSweep, Fig1VerdictFlipsOnceAtIndifferenceTau) {
  expect_single_flip(run_sweep(default_spec(FigureId::kFig1)), 201);
}

TEST(RunSweep, Fig2VerdictFlipsOncePerN) {
  SweepSpec s = default_spec(FigureId::kFig2);
  override_axis(s, linspace_axis("ewc", 0.0, 1.0, 41));
  const Table t = run_sweep(s);
  ASSERT_EQ(t.rows.size(), 5u * 41u * 201u);
  expect_single_flip(t, 201);
}

TEST(RunSweep, DegenerateCornerIsZeroPayoff) {
  const Table t = run_sweep(default_spec(FigureId::kFig1));
  const auto& last = t.rows.back();
  EXPECT_EQ(last[column(t, "e_wc")], 1.0);
  EXPECT_EQ(last[column(t, "tau")], 1.0);
  EXPECT_EQ(last[column(t, "lambda_pi")], 0.0);
  EXPECT_EQ(last[column(t, "expected_payoff")], 0.0);
  EXPECT_EQ(last[column(t, "rational")], 0.0);
}

TEST(RunSweep, Fig3Curves) {
  const Table a = run_sweep(default_spec(FigureId::kFig3a));
  ASSERT_EQ(a.rows.size(), 19u);
  EXPECT_NEAR(at(a, 0, "early_limit"), 0.421875, 1e-9);
  EXPECT_GT(at(a, 1, "early_limit"), 0.5);

  const Table b = run_sweep(default_spec(FigureId::kFig3b));
  ASSERT_EQ(b.rows.size(), 101u);
  EXPECT_EQ(at(b, 100, "mu"), 10.0);

  const Table c = run_sweep(default_spec(FigureId::kFig3c));
  ASSERT_EQ(c.rows.size(), 101u);
  EXPECT_EQ(at(c, 0, "e"), 0.0);
}

TEST(RunSweep, Fig4Bounds) {
  const Table t = run_sweep(default_spec(FigureId::kFig4));
  ASSERT_EQ(t.rows.size(), 5u * 101u);
  bool found = false;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (at(t, r, "s_top") == 0.5 && std::abs(at(t, r, "e_wc") - 0.5) < 1e-12) {
      EXPECT_EQ(at(t, r, "lower_bound"), 0.0);
      EXPECT_EQ(at(t, r, "upper_bound"), 1.0);
      EXPECT_NEAR(at(t, r, "optimal_tau"), 2.0 / 3.0, 1e-4);
      found = true;
    }
    if (at(t, r, "s_top") == 1.0) {
      EXPECT_EQ(at(t, r, "rational_exists"), at(t, r, "e_wc") <= 0.5 ? 1.0 : 0.0);
    }
  }
  EXPECT_TRUE(found);
}

TEST(RunSweep, Fig5GapColumns) {
  const Table t = run_sweep(default_spec(FigureId::kFig5));
  ASSERT_EQ(t.rows.size(), 5u * 9u * 101u);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (const auto& cell : t.rows[r]) ASSERT_TRUE(cell.has_value());
    EXPECT_NEAR(at(t, r, "gap"), at(t, r, "late_limit_avg") - at(t, r, "early_limit"), 1e-15);
  }
}

TEST(RunSweep, MonteCarloColumnsAgree) {
  SweepSpec s = default_spec(FigureId::kFig3b);
  override_axis(s, parse_axis("mu=0.3,2,6"));
  SimConfig sim;
  sim.trials = 200000;
  s.sim = sim;
  const Table t = run_sweep(s);
  ASSERT_EQ(t.columns.back(), "mc_std_error");
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double mu = at(t, r, "mu");
    const double ref = expected_payoff({2, mu, 0.5});
    EXPECT_LE(std::abs(at(t, r, "mc_expected_payoff") - ref), 3.0 * at(t, r, "mc_std_error"));
  }

  SweepSpec custom = default_spec(FigureId::kCustom);
  override_axis(custom, parse_axis("tau=0,0.5,1"));
  override_axis(custom, parse_axis("ewc=0.4,1"));
  custom.sim = sim;
  const Table c = run_sweep(custom);
  ASSERT_EQ(c.rows.size(), 6u);
  for (std::size_t r = 0; r < c.rows.size(); ++r) {
    if (at(c, r, "tau") * at(c, r, "e_wc") >= 1.0) continue;
    EXPECT_LE(std::abs(at(c, r, "mc_wc_expected_payoff") - at(c, r, "wc_expected_payoff")),
              3.0 * at(c, r, "mc_std_error"));
  }
}

TEST(RunSweep, OutputIndependentOfThreadCount) {
  SweepSpec s = default_spec(FigureId::kFig5);
  override_axis(s, linspace_axis("mu", 0.1, 10.0, 11));
  SimConfig sim;
  sim.trials = 2000;
  s.sim = sim;
  s.threads = 1;
  const std::string one = render(run_sweep(s), OutputFormat::kCsv);
  s.threads = 5;
  EXPECT_EQ(one, render(run_sweep(s), OutputFormat::kCsv));
  EXPECT_EQ(one, render(run_sweep(s), OutputFormat::kCsv));
}

TEST(RunSweep, JsonHasSameKeysAsCsvHeader) {
  const Table t = run_sweep(default_spec(FigureId::kFig3a));
  const std::string json = render(t, OutputFormat::kJson);
  for (const auto& col : t.columns) {
    EXPECT_NE(json.find("\"" + col + "\""), std::string::npos) << col;
  }
  EXPECT_EQ(json.front(), '[');
}

}  // namespace
}  // namespace wfc::cli
