#include "fixtures.hpp"

#include <algorithm>

namespace fixtures {

using signbleu::Gram;
using signbleu::GramItem;
using signbleu::GramKind;
using signbleu::GramMultiset;

std::vector<std::vector<std::string>> marked_rows(const signbleu::BlockMatrix& b) {
  std::vector<std::vector<std::string>> rows(b.channels.size());
  for (std::size_t row = 0; row < b.channels.size(); ++row) {
    for (const auto& column : b.columns) {
      const signbleu::BlockCell& cell = column[row];
      if (cell.is_null()) {
        rows[row].push_back("-");
        continue;
      }
      std::string text;
      if (cell.cont_prev) text += ":";
      text += cell.gloss;
      if (cell.cont_next) text += ":";
      rows[row].push_back(std::move(text));
    }
  }
  return rows;
}

GramMultiset make_multiset(GramKind kind, int order,
                           const std::vector<GoldenGram>& grams) {
  GramMultiset out;
  out.kind = kind;
  out.order = order;
  for (const auto& golden : grams) {
    Gram gram;
    gram.kind = kind;
    for (const auto& [channel, gloss] : golden.items) {
      gram.items.push_back(GramItem{channel, gloss, 0});
    }
    if (kind == GramKind::Channel) {
      std::sort(gram.items.begin(), gram.items.end());
    }
    out.add(std::move(gram), golden.count);
  }
  return out;
}

namespace {

GoldenGram t(const std::vector<std::pair<std::string, std::string>>& items,
             long long count = 1) {
  return {items, count};
}

}  // namespace

std::vector<GoldenGram> doc1_t1() {
  std::vector<GoldenGram> out;
  for (const char* g : {"tomorrow1", "date:8", "weather1", "afternoon1", "start1",
                        "snow1", "temp2", "cold1", "danger1"}) {
    out.push_back(t({{"right", g}}));
  }
  for (const char* g : {"weather1", "afternoon1", "start1", "snow1", "temp2",
                        "cold1"}) {
    out.push_back(t({{"left", g}}));
  }
  out.push_back(t({{"eye", "EBf"}}, 2));
  out.push_back(t({{"mouth", "Ci"}}));
  out.push_back(t({{"mouth", "Mo1"}}));
  return out;
}

std::vector<GoldenGram> doc1_t2() {
  const std::vector<std::string> right = {"tomorrow1", "date:8", "weather1",
                                          "afternoon1", "start1", "snow1",
                                          "temp2", "cold1", "danger1"};
  const std::vector<std::string> left = {"weather1", "afternoon1", "start1",
                                         "snow1", "temp2", "cold1"};
  std::vector<GoldenGram> out;
  for (std::size_t i = 0; i + 1 < right.size(); ++i) {
    out.push_back(t({{"right", right[i]}, {"right", right[i + 1]}}));
  }
  for (std::size_t i = 0; i + 1 < left.size(); ++i) {
    out.push_back(t({{"left", left[i]}, {"left", left[i + 1]}}));
  }
  out.push_back(t({{"eye", "EBf"}, {"eye", "EBf"}}));
  out.push_back(t({{"mouth", "Ci"}, {"mouth", "Mo1"}}));
  return out;
}

std::vector<GoldenGram> doc1_t3() {
  const std::vector<std::string> right = {"tomorrow1", "date:8", "weather1",
                                          "afternoon1", "start1", "snow1",
                                          "temp2", "cold1", "danger1"};
  const std::vector<std::string> left = {"weather1", "afternoon1", "start1",
                                         "snow1", "temp2", "cold1"};
  std::vector<GoldenGram> out;
  for (std::size_t i = 0; i + 2 < right.size(); ++i) {
    out.push_back(t({{"right", right[i]}, {"right", right[i + 1]},
                     {"right", right[i + 2]}}));
  }
  for (std::size_t i = 0; i + 2 < left.size(); ++i) {
    out.push_back(t({{"left", left[i]}, {"left", left[i + 1]},
                     {"left", left[i + 2]}}));
  }
  return out;
}

std::vector<GoldenGram> doc1_c2() {
  return {
      t({{"left", "weather1"}, {"right", "weather1"}}),
      t({{"left", "afternoon1"}, {"right", "afternoon1"}}),
      t({{"left", "start1"}, {"right", "start1"}}),
      t({{"left", "snow1"}, {"right", "snow1"}}, 2),
      t({{"eye", "EBf"}, {"right", "snow1"}}),
      t({{"eye", "EBf"}, {"left", "snow1"}}),
      t({{"left", "temp2"}, {"right", "temp2"}}, 2),
      t({{"mouth", "Ci"}, {"right", "temp2"}}),
      t({{"left", "temp2"}, {"mouth", "Ci"}}),
      t({{"left", "cold1"}, {"right", "cold1"}}),
      t({{"mouth", "Ci"}, {"right", "cold1"}}),
      t({{"left", "cold1"}, {"mouth", "Ci"}}),
      t({{"eye", "EBf"}, {"right", "danger1"}}),
      t({{"eye", "EBf"}, {"mouth", "Mo1"}}),
  };
}

std::vector<GoldenGram> doc2_t1() {
  std::vector<GoldenGram> out;
  for (const char* g : {"night1", "start1", "weekend1", "date:10", "day1",
                        "until1", "snow1", "temp2", "cold1", "danger1"}) {
    out.push_back(t({{"right", g}}));
  }
  for (const char* g : {"night1", "start1", "weekend1", "day1", "until1",
                        "snow1", "temp2", "cold1"}) {
    out.push_back(t({{"left", g}}));
  }
  out.push_back(t({{"eye", "EBf"}}));
  out.push_back(t({{"mouth", "Mmo"}}, 4));
  out.push_back(t({{"mouth", "Ci"}}));
  return out;
}

std::vector<GoldenGram> doc2_t2() {
  const std::vector<std::string> right = {"night1", "start1", "weekend1",
                                          "date:10", "day1", "until1",
                                          "snow1", "temp2", "cold1", "danger1"};
  const std::vector<std::string> left = {"night1", "start1", "weekend1", "day1",
                                         "until1", "snow1", "temp2", "cold1"};
  std::vector<GoldenGram> out;
  for (std::size_t i = 0; i + 1 < right.size(); ++i) {
    out.push_back(t({{"right", right[i]}, {"right", right[i + 1]}}));
  }
  for (std::size_t i = 0; i + 1 < left.size(); ++i) {
    out.push_back(t({{"left", left[i]}, {"left", left[i + 1]}}));
  }
  out.push_back(t({{"mouth", "Mmo"}, {"mouth", "Mmo"}}, 3));
  out.push_back(t({{"mouth", "Mmo"}, {"mouth", "Ci"}}));
  return out;
}

std::vector<GoldenGram> doc2_t3() {
  const std::vector<std::string> right = {"night1", "start1", "weekend1",
                                          "date:10", "day1", "until1",
                                          "snow1", "temp2", "cold1", "danger1"};
  const std::vector<std::string> left = {"night1", "start1", "weekend1", "day1",
                                         "until1", "snow1", "temp2", "cold1"};
  std::vector<GoldenGram> out;
  for (std::size_t i = 0; i + 2 < right.size(); ++i) {
    out.push_back(t({{"right", right[i]}, {"right", right[i + 1]},
                     {"right", right[i + 2]}}));
  }
  for (std::size_t i = 0; i + 2 < left.size(); ++i) {
    out.push_back(t({{"left", left[i]}, {"left", left[i + 1]},
                     {"left", left[i + 2]}}));
  }
  out.push_back(t({{"mouth", "Mmo"}, {"mouth", "Mmo"}, {"mouth", "Mmo"}}, 2));
  out.push_back(t({{"mouth", "Mmo"}, {"mouth", "Mmo"}, {"mouth", "Ci"}}));
  return out;
}

std::vector<GoldenGram> doc2_c2() {
  return {
      t({{"left", "night1"}, {"right", "night1"}}, 2),
      t({{"mouth", "Mmo"}, {"right", "night1"}}),
      t({{"left", "night1"}, {"mouth", "Mmo"}}),
      t({{"left", "start1"}, {"right", "start1"}}, 2),
      t({{"mouth", "Mmo"}, {"right", "start1"}}),
      t({{"left", "start1"}, {"mouth", "Mmo"}}),
      t({{"left", "weekend1"}, {"right", "weekend1"}}, 2),
      t({{"mouth", "Mmo"}, {"right", "weekend1"}}),
      t({{"left", "weekend1"}, {"mouth", "Mmo"}}),
      t({{"mouth", "Mmo"}, {"right", "date:10"}}),
      t({{"left", "day1"}, {"right", "day1"}}),
      t({{"left", "until1"}, {"right", "until1"}}),
      t({{"left", "snow1"}, {"right", "snow1"}}, 2),
      t({{"eye", "EBf"}, {"right", "snow1"}}),
      t({{"eye", "EBf"}, {"left", "snow1"}}),
      t({{"left", "temp2"}, {"right", "temp2"}}, 2),
      t({{"mouth", "Ci"}, {"right", "temp2"}}),
      t({{"left", "temp2"}, {"mouth", "Ci"}}),
      t({{"left", "cold1"}, {"right", "cold1"}}),
  };
}

}  // namespace fixtures
