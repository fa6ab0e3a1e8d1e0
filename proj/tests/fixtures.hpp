// Shared fixtures: the two worked-example documents, their channel mapping,
// and golden gram multisets recounted from the block tables by hand.
#pragma once

#include <string>
#include <vector>

#include "signbleu/annotation.hpp"
#include "signbleu/block.hpp"
#include "signbleu/gram.hpp"

namespace fixtures {

inline signbleu::ChannelMapping example_mapping() {
  signbleu::ChannelMapping m;
  m.entries = {{"both", {"right", "left"}},
               {"right", {"right"}},
               {"eye", {"eye"}},
               {"mouth", {"mouth"}}};
  m.channel_order = {"right", "left", "eye", "mouth"};
  m.manual_channels = {"right", "left"};
  m.dominant_channel = "right";
  m.non_dominant_channel = "left";
  return m;
}

// 18 segments once blockified; tomorrow1 ends 10ms early to exercise the
// empty-segment drop without changing the matrix.
inline signbleu::TimeAlignedDocument doc1() {
  signbleu::TimeAlignedDocument doc;
  doc.id = "doc1";
  doc.source_text = "tomorrow afternoon snow will start and temperatures drop "
                    "to dangerous cold";
  doc.annotations = {
      {"right", 100, 190, "tomorrow1"},
      {"right", 200, 300, "date:8"},
      {"both", 300, 400, "weather1"},
      {"both", 400, 500, "afternoon1"},
      {"both", 500, 600, "start1"},
      {"both", 600, 800, "snow1"},
      {"eye", 700, 900, "EBf"},
      {"both", 900, 1100, "temp2"},
      {"mouth", 1000, 1400, "Ci"},
      {"both", 1200, 1300, "cold1"},
      {"right", 1400, 1600, "danger1"},
      {"eye", 1500, 1800, "EBf"},
      {"mouth", 1700, 1900, "Mo1"},
  };
  doc.normalize();
  return doc;
}

// 22 segments once blockified.
inline signbleu::TimeAlignedDocument doc2() {
  signbleu::TimeAlignedDocument doc;
  doc.id = "doc2";
  doc.source_text = "snow starts at night and through the weekend until day "
                    "ten temperatures stay dangerously cold";
  doc.annotations = {
      {"mouth", 100, 300, "Mmo"},
      {"both", 200, 400, "night1"},
      {"both", 400, 600, "start1"},
      {"mouth", 500, 700, "Mmo"},
      {"mouth", 700, 900, "Mmo"},
      {"both", 800, 1000, "weekend1"},
      {"mouth", 1000, 1200, "Mmo"},
      {"right", 1100, 1300, "date:10"},
      {"both", 1300, 1400, "day1"},
      {"both", 1400, 1500, "until1"},
      {"both", 1500, 1700, "snow1"},
      {"eye", 1600, 1800, "EBf"},
      {"both", 1800, 2000, "temp2"},
      {"mouth", 1900, 2100, "Ci"},
      {"both", 2100, 2200, "cold1"},
      {"right", 2200, 2300, "danger1"},
  };
  doc.normalize();
  return doc;
}

// ':'-marked rows of the expected block matrices, exactly as the worked
// example prints them (columns separated by |, null as -).
inline std::vector<std::vector<std::string>> doc1_marked_rows() {
  return {
      {"tomorrow1", "date:8", "weather1", "afternoon1", "start1", "snow1:",
       ":snow1", "-", "temp2:", ":temp2", "-", "cold1", "-", "danger1:",
       ":danger1", "-", "-", "-"},
      {"-", "-", "weather1", "afternoon1", "start1", "snow1:", ":snow1", "-",
       "temp2:", ":temp2", "-", "cold1", "-", "-", "-", "-", "-", "-"},
      {"-", "-", "-", "-", "-", "-", "EBf:", ":EBf", "-", "-", "-", "-", "-",
       "-", "EBf:", ":EBf:", ":EBf", "-"},
      {"-", "-", "-", "-", "-", "-", "-", "-", "-", "Ci:", ":Ci:", ":Ci:",
       ":Ci", "-", "-", "-", "Mo1:", ":Mo1"},
  };
}

inline std::vector<std::vector<std::string>> doc2_marked_rows() {
  return {
      {"-", "night1:", ":night1", "start1:", ":start1", "-", "-", "weekend1:",
       ":weekend1", "-", "date:10:", ":date:10", "day1", "until1", "snow1:",
       ":snow1", "-", "temp2:", ":temp2", "-", "cold1", "danger1"},
      {"-", "night1:", ":night1", "start1:", ":start1", "-", "-", "weekend1:",
       ":weekend1", "-", "-", "-", "day1", "until1", "snow1:", ":snow1", "-",
       "temp2:", ":temp2", "-", "cold1", "-"},
      {"-", "-", "-", "-", "-", "-", "-", "-", "-", "-", "-", "-", "-", "-",
       "-", "EBf:", ":EBf", "-", "-", "-", "-", "-"},
      {"Mmo:", ":Mmo", "-", "-", "Mmo:", ":Mmo", "Mmo:", ":Mmo", "-", "Mmo:",
       ":Mmo", "-", "-", "-", "-", "-", "-", "-", "Ci:", ":Ci", "-", "-"},
  };
}

/// Renders one row of cells as the marked strings above.
std::vector<std::vector<std::string>> marked_rows(const signbleu::BlockMatrix& b);

struct GoldenGram {
  std::vector<std::pair<std::string, std::string>> items;  // (channel, gloss)
  long long count;
};

signbleu::GramMultiset make_multiset(signbleu::GramKind kind, int order,
                                     const std::vector<GoldenGram>& grams);

// Gram multisets recounted from the block tables (temporal per row, channel
// per column as C(k,n) subsets).
std::vector<GoldenGram> doc1_t1();
std::vector<GoldenGram> doc1_t2();
std::vector<GoldenGram> doc1_t3();
std::vector<GoldenGram> doc1_c2();
std::vector<GoldenGram> doc2_t1();
std::vector<GoldenGram> doc2_t2();
std::vector<GoldenGram> doc2_t3();
std::vector<GoldenGram> doc2_c2();

}  // namespace fixtures
