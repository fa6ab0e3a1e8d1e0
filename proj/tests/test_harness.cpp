#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "signbleu/harness.hpp"

using namespace signbleu;

namespace {

std::vector<std::vector<std::string>> tokenize_all(
    const std::vector<std::string>& lines) {
  std::vector<std::vector<std::string>> out;
  for (const auto& line : lines) {
    std::vector<std::string> tokens;
    std::istringstream is(line);
    std::string token;
    while (is >> token) tokens.push_back(token);
    out.push_back(std::move(tokens));
  }
  return out;
}

// Independent oracle: ranks by pairwise counting, Pearson over long doubles.
double rank_pearson_oracle(const std::vector<double>& x,
                           const std::vector<double>& y) {
  const std::size_t n = x.size();
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<long double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t less = 0;
      std::size_t equal = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (v[j] < v[i]) ++less;
        if (v[j] == v[i]) ++equal;
      }
      out[i] = static_cast<long double>(less) +
               (static_cast<long double>(equal) + 1.0L) / 2.0L;
    }
    return out;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  long double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += rx[i];
    sy += ry[i];
  }
  const long double mx = sx / n;
  const long double my = sy / n;
  long double cov = 0, vx = 0, vy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    cov += (rx[i] - mx) * (ry[i] - my);
    vx += (rx[i] - mx) * (rx[i] - mx);
    vy += (ry[i] - my) * (ry[i] - my);
  }
  return static_cast<double>(cov / std::sqrt(vx * vy));
}

// Exhaustive O(n^2) pair classification with the tie-corrected denominator.
double tau_b_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0, ties_xy = 0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0 && dy == 0) {
        ++ties_xy;
      } else if (dx == 0) {
        ++ties_x;
      } else if (dy == 0) {
        ++ties_y;
      } else if (dx * dy > 0) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  const long long n0 = static_cast<long long>(n) * (n - 1) / 2;
  const long long n1 = ties_x + ties_xy;
  const long long n2 = ties_y + ties_xy;
  return (concordant - discordant) /
         std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
}

}  // namespace

TEST_CASE("rng sampling is uniform-range, deterministic, without replacement") {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng rng(7);
  const auto sample = sample_without_replacement(100, 40, rng);
  CHECK(sample.size() == 40);
  CHECK(std::set<std::size_t>(sample.begin(), sample.end()).size() == 40);
  for (std::size_t v : sample) CHECK(v < 100);

  Rng small(9);
  CHECK_THROWS_AS(sample_without_replacement(3, 4, small), Error);
}

TEST_CASE("text BLEU: identity, frozen reference value, emptiness") {
  const auto hyps = tokenize_all({"the cat sat on the mat today"});
  CHECK(text_bleu4(hyps, hyps) == doctest::Approx(1.0).epsilon(1e-12));

  // Frozen against an independent implementation of corpus BLEU
  // (orders 1-4, exponential smoothing, closest-reference BP).
  const auto fixed_hyps = tokenize_all({
      "the cat sat on the mat",
      "a quick brown fox jumps over dogs",
      "signs flow in many channels at once",
      "short one",
  });
  const auto fixed_refs = tokenize_all({
      "the cat sat on a mat",
      "the quick brown fox jumped over the lazy dog",
      "signs flow across many channels at once",
      "short one indeed",
  });
  CHECK(text_bleu4(fixed_hyps, fixed_refs) ==
        doctest::Approx(0.356521954608444).epsilon(1e-4));

  CHECK_THROWS_WITH_AS(text_bleu4({}, {}), doctest::Contains("EMPTY_CORPUS"),
                       Error);

  // Without effective order, a corpus with no 4-grams scores 0 even for a
  // perfect match; that is the strict convention this variant follows.
  const auto three = tokenize_all({"the cat sat"});
  CHECK(text_bleu4(three, three) == 0.0);
}

TEST_CASE("spearman: limits, hand-computed tie case, oracle fixtures") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  std::vector<double> reversed(x.rbegin(), x.rend());
  CHECK(spearman_rho(x, x) == doctest::Approx(1.0));
  CHECK(spearman_rho(x, reversed) == doctest::Approx(-1.0));

  // ranks x: 1, 2.5, 2.5, 4; ranks y: 1, 3, 2, 4 -> 4.5/sqrt(4.5*5)
  CHECK(spearman_rho({1, 2, 2, 3}, {1, 3, 2, 4}) ==
        doctest::Approx(0.9486832980505138).epsilon(1e-12));

  testgen::Rand rand(2025);
  for (int fixture = 0; fixture < 20; ++fixture) {
    const std::size_t n = 3 + rand.below(12);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<double>(rand.below(6));
      b[i] = static_cast<double>(rand.below(6));
    }
    if (std::set<double>(a.begin(), a.end()).size() < 2 ||
        std::set<double>(b.begin(), b.end()).size() < 2) {
      continue;
    }
    CHECK(spearman_rho(a, b) ==
          doctest::Approx(rank_pearson_oracle(a, b)).epsilon(1e-12));
  }

  CHECK_THROWS_WITH_AS(spearman_rho({1}, {1}), doctest::Contains("DEGENERATE"),
                       Error);
  CHECK_THROWS_WITH_AS(spearman_rho({1, 1, 1}, {1, 2, 3}),
                       doctest::Contains("DEGENERATE"), Error);
}

TEST_CASE("kendall tau-b: limits and exhaustive small-vector oracle") {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  std::vector<double> reversed(x.rbegin(), x.rend());
  CHECK(kendall_tau_b(x, x) == doctest::Approx(1.0));
  CHECK(kendall_tau_b(x, reversed) == doctest::Approx(-1.0));

  // Exhaustive over short {0,1,2}-valued vectors; the full sweep up to
  // length 8 runs in the acceptance suite.
  for (std::size_t n = 2; n <= 5; ++n) {
    std::size_t combos = 1;
    for (std::size_t i = 0; i < n; ++i) combos *= 3;
    for (std::size_t xi = 0; xi < combos; ++xi) {
      for (std::size_t yi = 0; yi < combos; ++yi) {
        std::vector<double> a(n), b(n);
        std::size_t tx = xi, ty = yi;
        bool degenerate_a = true, degenerate_b = true;
        for (std::size_t i = 0; i < n; ++i) {
          a[i] = static_cast<double>(tx % 3);
          b[i] = static_cast<double>(ty % 3);
          tx /= 3;
          ty /= 3;
          degenerate_a = degenerate_a && a[i] == a[0];
          degenerate_b = degenerate_b && b[i] == b[0];
        }
        if (degenerate_a || degenerate_b) continue;
        const double got = kendall_tau_b(a, b);
        const double want = tau_b_oracle(a, b);
        if (got != doctest::Approx(want).epsilon(1e-12)) {
          CAPTURE(n);
          CAPTURE(xi);
          CAPTURE(yi);
          CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("rank correlations are symmetric and monotone-invariant") {
  testgen::Rand rand(11);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 4 + rand.below(10);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<double>(rand.below(8));
      b[i] = static_cast<double>(rand.below(8));
    }
    if (std::set<double>(a.begin(), a.end()).size() < 2 ||
        std::set<double>(b.begin(), b.end()).size() < 2) {
      continue;
    }
    std::vector<double> scaled(n), cubed(n);
    for (std::size_t i = 0; i < n; ++i) {
      scaled[i] = 2.0 * a[i] + 1.0;
      cubed[i] = a[i] * a[i] * a[i];
    }
    CHECK(spearman_rho(a, b) == doctest::Approx(spearman_rho(b, a)).epsilon(1e-12));
    CHECK(kendall_tau_b(a, b) == doctest::Approx(kendall_tau_b(b, a)).epsilon(1e-12));
    CHECK(spearman_rho(scaled, b) == doctest::Approx(spearman_rho(a, b)).epsilon(1e-12));
    CHECK(spearman_rho(cubed, b) == doctest::Approx(spearman_rho(a, b)).epsilon(1e-12));
    CHECK(kendall_tau_b(scaled, b) == doctest::Approx(kendall_tau_b(a, b)).epsilon(1e-12));
    CHECK(kendall_tau_b(cubed, b) == doctest::Approx(kendall_tau_b(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("identical documents make every simulated system perfect") {
  SyntheticCorpusConfig cfg;
  cfg.documents = 1;
  cfg.seed = 5;
  const auto seedling = synthetic_corpus(cfg);
  std::vector<PairedDocument> corpus;
  for (int i = 0; i < 24; ++i) {
    PairedDocument copy = seedling[0];
    copy.sign.id = "copy" + std::to_string(i);
    corpus.push_back(std::move(copy));
  }
  SimulationConfig sim;
  sim.runs = 5;
  sim.sample_size = 10;
  sim.seed = 99;
  sim.metric_grid = default_metric_grid(synthetic_mapping(), 2, 2);
  const ScoreTable table = simulate_systems(corpus, synthetic_mapping(), sim);
  REQUIRE(table.rows.size() == 5);
  for (const auto& row : table.rows) {
    for (double value : row) CHECK(value == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("simulation is deterministic and in range") {
  SyntheticCorpusConfig cfg;
  cfg.documents = 40;
  cfg.seed = 2024;
  const auto corpus = synthetic_corpus(cfg);
  SimulationConfig sim;
  sim.runs = 50;
  sim.sample_size = 20;
  sim.seed = 31;
  sim.metric_grid = default_metric_grid(synthetic_mapping(), 2, 2);

  const ScoreTable a = simulate_systems(corpus, synthetic_mapping(), sim);
  const ScoreTable b = simulate_systems(corpus, synthetic_mapping(), sim);
  CHECK(score_table_tsv(a) == score_table_tsv(b));
  CHECK(a.rows.size() == 50);
  for (const auto& row : a.rows) {
    REQUIRE(row.size() == a.metric_names.size());
    for (double value : row) {
      CHECK(value >= 0.0);
      CHECK(value <= 1.0);
    }
  }

  SimulationConfig too_big = sim;
  too_big.sample_size = 100;
  CHECK_THROWS_WITH_AS(simulate_systems(corpus, synthetic_mapping(), too_big),
                       doctest::Contains("CORPUS_TOO_SMALL"), Error);
}

TEST_CASE("correlation report ranks faithful metrics above noise") {
  SyntheticCorpusConfig cfg;
  cfg.documents = 60;
  const auto corpus = synthetic_corpus(cfg);
  SimulationConfig sim;
  sim.runs = 60;
  sim.sample_size = 20;
  sim.seed = 404;
  sim.metric_grid = default_metric_grid(synthetic_mapping(), 2, 2);
  ScoreTable table = simulate_systems(corpus, synthetic_mapping(), sim);

  // Plug-in columns: an exact copy of text BLEU, a seeded random column, and
  // a constant column that must be flagged, merged through the TSV path.
  const std::size_t bleu_col = table.metric_names.size() - 1;
  std::ostringstream extra;
  extra << "run\tbleu_copy\trandom_noise\tconstant\n";
  Rng noise(5150);
  for (std::size_t run = 0; run < table.rows.size(); ++run) {
    extra << run << "\t" << table.rows[run][bleu_col] << "\t"
          << noise.next_double() << "\t0.5\n";
  }
  merge_extra_columns(table, extra.str());

  const CorrelationReport report = correlation_report(table);
  REQUIRE(!report.metrics.empty());
  CHECK(report.metrics.front().metric == "bleu_copy");
  CHECK(report.metrics.front().spearman == doctest::Approx(1.0));
  CHECK(report.metrics.front().kendall == doctest::Approx(1.0));

  double random_rho = 2.0;
  bool constant_flagged = false;
  for (const auto& m : report.metrics) {
    if (m.metric == "random_noise") random_rho = m.spearman;
    if (m.metric == "constant") constant_flagged = m.degenerate;
  }
  CHECK(constant_flagged);
  CHECK(random_rho < 0.5);

  // Sorted by descending rho with degenerate rows last.
  for (std::size_t i = 1; i < report.metrics.size(); ++i) {
    if (report.metrics[i - 1].degenerate) CHECK(report.metrics[i].degenerate);
    if (!report.metrics[i].degenerate) {
      CHECK(report.metrics[i - 1].spearman >= report.metrics[i].spearman);
    }
  }

  // TSV round trip of the score table keeps values.
  const ScoreTable reparsed = score_table_from_tsv(score_table_tsv(table));
  CHECK(reparsed.metric_names == table.metric_names);
  REQUIRE(reparsed.rows.size() == table.rows.size());
  for (std::size_t run = 0; run < table.rows.size(); ++run) {
    for (std::size_t col = 0; col < table.rows[run].size(); ++col) {
      CHECK(reparsed.rows[run][col] ==
            doctest::Approx(table.rows[run][col]).epsilon(1e-9));
    }
  }
}

TEST_CASE("simulation metrics agree with direct corpus scoring") {
  // The fast per-run scorer must match corpus_sign_bleu on the same pairing.
  SyntheticCorpusConfig cfg;
  cfg.documents = 12;
  cfg.seed = 77;
  const auto corpus = synthetic_corpus(cfg);
  const ChannelMapping mapping = synthetic_mapping();

  SimulationConfig sim;
  sim.runs = 1;
  sim.sample_size = 12;
  sim.seed = 3;
  sim.metric_grid = default_metric_grid(mapping, 3, 2);
  const ScoreTable table = simulate_systems(corpus, mapping, sim);

  Rng rng(sim.seed ^ 0ULL);
  const auto sample = sample_without_replacement(12, 12, rng);
  for (std::size_t metric = 0; metric < sim.metric_grid.size(); ++metric) {
    std::vector<std::pair<BlockMatrix, std::vector<BlockMatrix>>> pairs;
    for (std::size_t i = 0; i < 6; ++i) {
      pairs.push_back({blockify(corpus[sample[i]].sign, mapping),
                       {blockify(corpus[sample[i + 6]].sign, mapping)}});
    }
    ScoreConfig expected_cfg = sim.metric_grid[metric].config;
    double expected = 0.0;
    try {
      expected = corpus_sign_bleu(pairs, expected_cfg).score;
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::AllOrdersEmpty);
    }
    CHECK(table.rows[0][metric] == doctest::Approx(expected).epsilon(1e-12));
  }
}
