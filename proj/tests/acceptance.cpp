// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "fixtures.hpp"
#include "generators.hpp"
#include "signbleu/corpus_io.hpp"
#include "signbleu/harness.hpp"
#include "signbleu/linearize.hpp"
#include "signbleu/score.hpp"

using namespace signbleu;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::function<void(std::ostringstream&)> body;  // throws on failure
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw Failure(message);
}

void require_near(double got, double want, double tolerance,
                  const std::string& what) {
  if (!(std::abs(got - want) <= tolerance)) {
    std::ostringstream os;
    os << what << ": got " << got << ", want " << want << " +/- " << tolerance;
    throw Failure(os.str());
  }
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---- criterion 1: blockification reproduces the worked-example tables ----

void criterion_blockify(std::ostringstream& detail) {
  const auto start = Clock::now();
  const auto mapping = fixtures::example_mapping();
  const BlockMatrix one = blockify(fixtures::doc1(), mapping);
  const BlockMatrix two = blockify(fixtures::doc2(), mapping);
  require(fixtures::marked_rows(one) == fixtures::doc1_marked_rows(),
          "document 1 cells differ");
  require(fixtures::marked_rows(two) == fixtures::doc2_marked_rows(),
          "document 2 cells differ");
  require(one.column_count() == 18, "document 1 column count");
  require(two.column_count() == 22, "document 2 column count");
  require(annotation_count(one) == 19, "document 1 annotation count");
  require(annotation_count(two) == 24, "document 2 annotation count");
  const double elapsed = seconds_since(start);
  require(elapsed < 1.0, "blockification exceeded 1 s");
  detail << "both documents cell-identical (incl. date:8/date:10), "
         << elapsed * 1000 << " ms";
}

// ---- criterion 2: gram goldens ----

void criterion_gram_goldens(std::ostringstream& detail) {
  const auto mapping = fixtures::example_mapping();
  const BlockMatrix one = blockify(fixtures::doc1(), mapping);
  const BlockMatrix two = blockify(fixtures::doc2(), mapping);
  struct Golden {
    const BlockMatrix* matrix;
    GramKind kind;
    int order;
    std::vector<fixtures::GoldenGram> grams;
    const char* name;
  };
  const std::vector<Golden> goldens = {
      {&one, GramKind::Temporal, 1, fixtures::doc1_t1(), "doc1 t1"},
      {&one, GramKind::Temporal, 2, fixtures::doc1_t2(), "doc1 t2"},
      {&one, GramKind::Temporal, 3, fixtures::doc1_t3(), "doc1 t3"},
      {&one, GramKind::Channel, 2, fixtures::doc1_c2(), "doc1 c2"},
      {&two, GramKind::Temporal, 1, fixtures::doc2_t1(), "doc2 t1"},
      {&two, GramKind::Temporal, 2, fixtures::doc2_t2(), "doc2 t2"},
      {&two, GramKind::Temporal, 3, fixtures::doc2_t3(), "doc2 t3"},
      {&two, GramKind::Channel, 2, fixtures::doc2_c2(), "doc2 c2"},
  };
  for (const Golden& golden : goldens) {
    const GramMultiset got =
        golden.kind == GramKind::Temporal
            ? temporal_grams(*golden.matrix, golden.order)
            : channel_grams(*golden.matrix, golden.order);
    const GramMultiset want =
        fixtures::make_multiset(golden.kind, golden.order, golden.grams);
    require(got.counts == want.counts,
            std::string(golden.name) + " multiset differs");
  }
  detail << "t1/t2/t3/c2 multisets exact for both documents "
         << "(19/15/11/16 and 24/20/17/24 grams)";
}

// ---- criterion 3: channel precision and brevity penalty ----

void criterion_channel_precision(std::ostringstream& detail) {
  const auto mapping = fixtures::example_mapping();
  const BlockMatrix hyp = blockify(fixtures::doc1(), mapping);
  const BlockMatrix ref = blockify(fixtures::doc2(), mapping);
  const ClippedCount c2 = modified_precision(hyp, {ref}, GramKind::Channel, 2);
  require(c2.numerator == 10 && c2.denominator == 16,
          "c2 counts are not 10/16");
  require(static_cast<double>(c2.numerator) / c2.denominator == 0.625,
          "c2 precision is not exactly 0.625");
  require(annotation_count(hyp) == 19 && annotation_count(ref) == 24,
          "annotation counts are not 19/24");
  require_near(brevity_penalty(19, {24}), 0.768621, 1e-6, "brevity penalty");
  detail << "c2 = 10/16 = 0.625 exactly, BP(19,24) = "
         << brevity_penalty(19, {24});
}

// ---- criterion 4: composite arithmetic from pinned precisions ----

void criterion_composite(std::ostringstream& detail) {
  const std::vector<double> pinned = {0.368421, 0.266667, 0.181818, 0.625};
  const std::vector<double> weights(4, 0.25);
  const double raw = composite(pinned, weights);
  require_near(raw, 0.325056, 1e-5, "raw composite");
  const double final_score = brevity_penalty(19, {24}) * raw;
  require_near(final_score, 0.249844, 1e-5, "final score");
  detail << "raw " << raw << ", final " << final_score
         << " from pinned precisions";
}

// ---- criterion 5: property suite ----

void criterion_properties(std::ostringstream& detail) {
  const auto start = Clock::now();

  // Identity scoring across all non-empty order combinations.
  const auto mapping = fixtures::example_mapping();
  const BlockMatrix one = blockify(fixtures::doc1(), mapping);
  const BlockMatrix two = blockify(fixtures::doc2(), mapping);
  int identity_checks = 0;
  for (const BlockMatrix* b : {&one, &two}) {
    for (int t = 1; t <= 4; ++t) {
      for (int c = 1; c <= 4; ++c) {
        bool empty_order = false;
        for (int n = 1; n <= t; ++n) {
          empty_order = empty_order || temporal_grams(*b, n).total() == 0;
        }
        for (int n = 2; n <= c; ++n) {
          empty_order = empty_order || channel_grams(*b, n).total() == 0;
        }
        if (empty_order) continue;
        ScoreConfig cfg;
        cfg.max_temporal = t;
        cfg.max_channel = c;
        const ScoreReport report = sign_bleu(*b, {*b}, cfg);
        require(std::abs(report.score - 1.0) < 1e-12,
                "identity score is not 1.0 at t" + std::to_string(t) + "c" +
                    std::to_string(c));
        ++identity_checks;
      }
    }
  }
  require(identity_checks >= 16, "too few identity configurations exercised");

  testgen::Rand rand(20240509);

  // Clipping bound and channel-gram combinatorics on random matrices.
  for (int trial = 0; trial < 200; ++trial) {
    const auto [hyp_doc, m] = testgen::random_document(rand);
    const auto [ref_doc, m2] = testgen::random_document(rand);
    const BlockMatrix hyp = blockify(hyp_doc, m);
    const BlockMatrix ref = blockify(ref_doc, m2);
    for (int n = 1; n <= 4; ++n) {
      const ClippedCount clip =
          modified_precision(hyp, {ref}, GramKind::Temporal, n);
      require(clip.numerator >= 0 && clip.numerator <= clip.denominator,
              "clipping bound violated (temporal)");
    }
    for (int n = 2; n <= 4; ++n) {
      const ClippedCount clip =
          modified_precision(hyp, {ref}, GramKind::Channel, n);
      require(clip.numerator >= 0 && clip.numerator <= clip.denominator,
              "clipping bound violated (channel)");
      long long expected = 0;
      for (const auto& column : hyp.columns) {
        long long k = 0;
        for (const auto& cell : column) {
          if (!cell.is_null()) ++k;
        }
        if (k < n) continue;
        long long binomial = 1;
        for (long long i = 0; i < n; ++i) binomial = binomial * (k - i) / (i + 1);
        expected += binomial;
      }
      require(channel_grams(hyp, n).total() == expected,
              "per-column C(k,n) total violated");
    }
    require(temporal_grams(hyp, 1).total() == annotation_count(hyp),
            "t1 total != annotation count");
  }

  // linearize(delinearize(.)) identity on 1000 random grammatical sequences.
  for (int trial = 0; trial < 1000; ++trial) {
    const auto [doc, m] = testgen::random_document(rand);
    const TokenSequence tokens = linearize(blockify(doc, m), m);
    const BlockMatrix lifted = delinearize(tokens, m);
    require(format_tokens(linearize(lifted, m)) == format_tokens(tokens),
            "linearize(delinearize(t)) != t at trial " + std::to_string(trial));
  }

  // Block serialization round trip on random matrices.
  std::vector<BlockMatrix> blocks;
  for (int trial = 0; trial < 200; ++trial) {
    const auto [doc, m] = testgen::random_document(rand);
    blocks.push_back(blockify(doc, m));
  }
  require(blocks_from_json(blocks_to_json(blocks)) == blocks,
          "block JSON round trip changed a matrix");

  const double elapsed = seconds_since(start);
  require(elapsed < 60.0, "property suite exceeded 60 s");
  detail << "identity/clipping/combinatorics/round-trip properties held, "
         << elapsed << " s";
}

// ---- criterion 6: rank-correlation oracles ----

double tau_b_bruteforce(const std::vector<double>& x,
                        const std::vector<double>& y) {
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

void criterion_correlation_oracles(std::ostringstream& detail) {
  const auto start = Clock::now();

  // Exhaustive tau-b check over every pair of {0,1,2}-valued vectors of
  // length 2..8, skipping constant sides (degenerate by contract).
  std::atomic<long long> checked{0};
  std::atomic<bool> failed{false};
  std::string failure_message = "kendall mismatch";
  for (std::size_t n = 2; n <= 8 && !failed; ++n) {
    std::size_t combos = 1;
    for (std::size_t i = 0; i < n; ++i) combos *= 3;

    const unsigned workers = std::max(2u, std::thread::hardware_concurrency());
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        std::vector<double> a(n), b(n);
        long long local = 0;
        for (std::size_t xi = w; xi < combos; xi += workers) {
          std::size_t tx = xi;
          bool constant_a = true;
          for (std::size_t i = 0; i < n; ++i) {
            a[i] = static_cast<double>(tx % 3);
            tx /= 3;
            constant_a = constant_a && a[i] == a[0];
          }
          if (constant_a) continue;
          for (std::size_t yi = 0; yi < combos; ++yi) {
            std::size_t ty = yi;
            bool constant_b = true;
            for (std::size_t i = 0; i < n; ++i) {
              b[i] = static_cast<double>(ty % 3);
              ty /= 3;
              constant_b = constant_b && b[i] == b[0];
            }
            if (constant_b) continue;
            const double got = kendall_tau_b(a, b);
            const double want = tau_b_bruteforce(a, b);
            if (std::abs(got - want) > 1e-12) {
              failed = true;
              return;
            }
            ++local;
          }
        }
        checked += local;
      });
    }
    for (auto& thread : threads) thread.join();
  }
  require(!failed, failure_message);

  // Spearman against an independent tied-rank Pearson oracle on 20 fixed
  // fixtures (deterministic seed).
  testgen::Rand rand(606060);
  int fixtures_checked = 0;
  while (fixtures_checked < 20) {
    const std::size_t n = 3 + rand.below(14);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<double>(rand.below(5));
      b[i] = static_cast<double>(rand.below(5));
    }
    if (std::set<double>(a.begin(), a.end()).size() < 2 ||
        std::set<double>(b.begin(), b.end()).size() < 2) {
      continue;
    }
    // Oracle: pairwise-counted average ranks, then a long-double Pearson.
    auto ranks = [n](const std::vector<double>& v) {
      std::vector<long double> out(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t less = 0, equal = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (v[j] < v[i]) ++less;
          if (v[j] == v[i]) ++equal;
        }
        out[i] = less + (equal + 1.0L) / 2.0L;
      }
      return out;
    };
    const auto ra = ranks(a);
    const auto rb = ranks(b);
    long double ma = 0, mb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      ma += ra[i];
      mb += rb[i];
    }
    ma /= n;
    mb /= n;
    long double cov = 0, va = 0, vb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      cov += (ra[i] - ma) * (rb[i] - mb);
      va += (ra[i] - ma) * (ra[i] - ma);
      vb += (rb[i] - mb) * (rb[i] - mb);
    }
    const double want = static_cast<double>(cov / std::sqrt(va * vb));
    require_near(spearman_rho(a, b), want, 1e-12,
                 "spearman fixture " + std::to_string(fixtures_checked));
    ++fixtures_checked;
  }

  detail << checked.load() << " exhaustive tau-b pairs and 20 spearman "
         << "fixtures verified, " << seconds_since(start) << " s";
}

// ---- criterion 7: desk-scale simulation replication ----

void criterion_simulation(std::ostringstream& detail) {
  const auto start = Clock::now();

  SyntheticCorpusConfig corpus_cfg;
  corpus_cfg.documents = 400;
  corpus_cfg.seed = 20240607;
  const std::vector<PairedDocument> corpus = synthetic_corpus(corpus_cfg);
  require(corpus.size() == 400, "synthetic corpus size");
  const ChannelMapping mapping = synthetic_mapping();

  SimulationConfig sim;
  sim.runs = 200;
  sim.sample_size = 50;
  sim.seed = 4242;
  sim.metric_grid = default_metric_grid(mapping, 4, 4);

  ScoreTable table = simulate_systems(corpus, mapping, sim);
  const ScoreTable replay = simulate_systems(corpus, mapping, sim);
  require(score_table_tsv(table) == score_table_tsv(replay),
          "two invocations differ byte-for-byte");

  // Plug-in columns: a noise-free copy of text BLEU must outrank a seeded
  // random column.
  const std::size_t bleu_col = table.metric_names.size() - 1;
  std::ostringstream extra;
  extra << "run\tbleu_copy\trandom_scores\n";
  Rng noise(777);
  for (std::size_t run = 0; run < table.rows.size(); ++run) {
    extra << run << "\t" << table.rows[run][bleu_col] << "\t"
          << noise.next_double() << "\n";
  }
  merge_extra_columns(table, extra.str());
  const CorrelationReport report = correlation_report(table);

  double copy_rho = -2.0, random_rho = -2.0;
  std::size_t copy_rank = 0, random_rank = 0;
  for (std::size_t i = 0; i < report.metrics.size(); ++i) {
    if (report.metrics[i].metric == "bleu_copy") {
      copy_rho = report.metrics[i].spearman;
      copy_rank = i;
    }
    if (report.metrics[i].metric == "random_scores") {
      random_rho = report.metrics[i].spearman;
      random_rank = i;
    }
  }
  require(copy_rho > 0.9999, "text BLEU copy does not correlate with itself");
  require(copy_rank < random_rank, "random column outranked the BLEU copy");

  const double elapsed = seconds_since(start);
  require(elapsed < 60.0, "simulation exceeded 60 s");
  detail << "200 runs x 50 samples on 400 documents, byte-reproducible, "
         << "bleu_copy rho " << copy_rho << " ranked #" << copy_rank + 1
         << " vs random rho " << random_rho << " at #" << random_rank + 1 << ", "
         << elapsed << " s";
}

// ---- criterion 8: signature fidelity ----

void criterion_signature(std::ostringstream& detail) {
  const ScoreConfig cfg;  // default experimental configuration
  const std::string got = signature(cfg);
  require(got == "off:na||t:3|c:2|dim:1||m:sbleu|sm:exp|eff:n||v:0.1.0",
          "signature differs: " + got);
  detail << got;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "worked-example blockification", criterion_blockify},
      {2, "gram goldens", criterion_gram_goldens},
      {3, "channel precision and brevity penalty", criterion_channel_precision},
      {4, "composite arithmetic", criterion_composite},
      {5, "property suite", criterion_properties},
      {6, "rank-correlation oracles", criterion_correlation_oracles},
      {7, "desk-scale simulation replication", criterion_simulation},
      {8, "signature fidelity", criterion_signature},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::ostringstream detail;
    try {
      criterion.body(detail);
      std::cout << "CRITERION " << criterion.number << " (" << criterion.title
                << "): PASS - " << detail.str() << "\n";
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "CRITERION " << criterion.number << " (" << criterion.title
                << "): FAIL - " << e.what() << "\n";
    }
  }
  if (failures != 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all " << criteria.size() << " criteria passed\n";
  return 0;
}
