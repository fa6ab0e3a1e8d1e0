#include "signbleu/annotation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace signbleu {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "INVALID_CONFIG";
    case ErrorCode::UnmappedTier: return "UNMAPPED_TIER";
    case ErrorCode::ChannelCollision: return "CHANNEL_COLLISION";
    case ErrorCode::UnknownChannel: return "UNKNOWN_CHANNEL";
    case ErrorCode::NoManualChannels: return "NO_MANUAL_CHANNELS";
    case ErrorCode::GrammarError: return "GRAMMAR_ERROR";
    case ErrorCode::MalformedXml: return "MALFORMED_XML";
    case ErrorCode::MissingTimeValue: return "MISSING_TIME_VALUE";
    case ErrorCode::DanglingSlotRef: return "DANGLING_SLOT_REF";
    case ErrorCode::SchemaError: return "SCHEMA_ERROR";
    case ErrorCode::EmptyCorpus: return "EMPTY_CORPUS";
    case ErrorCode::CorpusTooSmall: return "CORPUS_TOO_SMALL";
    case ErrorCode::DegenerateInput: return "DEGENERATE_INPUT";
    case ErrorCode::AllOrdersEmpty: return "ALL_ORDERS_EMPTY";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::UnmappedTier: return "UNMAPPED_TIER";
    case ViolationKind::OverlapInTier: return "OVERLAP_IN_TIER";
    case ViolationKind::OverlapInChannel: return "OVERLAP_IN_CHANNEL";
    case ViolationKind::BadGloss: return "BAD_GLOSS";
    case ViolationKind::BadInterval: return "BAD_INTERVAL";
  }
  return "UNKNOWN";
}

bool is_valid_gloss(const std::string& gloss) {
  if (gloss.empty()) return false;
  if (gloss.front() == ':' || gloss.back() == ':') return false;
  for (unsigned char c : gloss) {
    if (std::isspace(c)) return false;
  }
  return true;
}

void TimeAlignedDocument::normalize() {
  std::stable_sort(annotations.begin(), annotations.end(),
                   [](const GlossAnnotation& a, const GlossAnnotation& b) {
                     return std::tie(a.start_ms, a.tier, a.end_ms, a.gloss) <
                            std::tie(b.start_ms, b.tier, b.end_ms, b.gloss);
                   });
}

const std::vector<std::string>* ChannelMapping::channels_for(
    const std::string& tier) const {
  for (const auto& [name, channels] : entries) {
    if (name == tier) return &channels;
  }
  return nullptr;
}

bool ChannelMapping::is_channel(const std::string& channel) const {
  return channel_index(channel) >= 0;
}

bool ChannelMapping::is_manual(const std::string& channel) const {
  return std::find(manual_channels.begin(), manual_channels.end(), channel) !=
         manual_channels.end();
}

int ChannelMapping::channel_index(const std::string& channel) const {
  auto it = std::find(channel_order.begin(), channel_order.end(), channel);
  if (it == channel_order.end()) return -1;
  return static_cast<int>(it - channel_order.begin());
}

void ChannelMapping::validate() const {
  if (channel_order.empty()) {
    throw Error(ErrorCode::InvalidConfig, "channel order is empty");
  }
  std::set<std::string> order_set(channel_order.begin(), channel_order.end());
  if (order_set.size() != channel_order.size()) {
    throw Error(ErrorCode::InvalidConfig, "duplicate channel in channel order");
  }
  std::set<std::string> fed;
  std::set<std::string> seen_tiers;
  for (const auto& [tier, channels] : entries) {
    if (!seen_tiers.insert(tier).second) {
      throw Error(ErrorCode::InvalidConfig, "tier mapped twice", tier);
    }
    if (channels.empty()) {
      throw Error(ErrorCode::InvalidConfig, "tier maps to no channel", tier);
    }
    for (const auto& channel : channels) {
      if (!order_set.count(channel)) {
        throw Error(ErrorCode::InvalidConfig,
                    "tier targets a channel missing from channel order",
                    tier + " -> " + channel);
      }
      fed.insert(channel);
    }
  }
  for (const auto& channel : channel_order) {
    if (!fed.count(channel)) {
      throw Error(ErrorCode::InvalidConfig, "no tier feeds channel", channel);
    }
  }
  for (const auto& channel : manual_channels) {
    if (!order_set.count(channel)) {
      throw Error(ErrorCode::InvalidConfig, "manual channel not in channel order",
                  channel);
    }
  }
  if (!manual_channels.empty() || !dominant_channel.empty() ||
      !non_dominant_channel.empty()) {
    if (dominant_channel == non_dominant_channel) {
      throw Error(ErrorCode::InvalidConfig,
                  "dominant and non-dominant channels must be distinct");
    }
    if (!is_manual(dominant_channel)) {
      throw Error(ErrorCode::InvalidConfig,
                  "dominant channel is not a manual channel", dominant_channel);
    }
    if (!is_manual(non_dominant_channel)) {
      throw Error(ErrorCode::InvalidConfig,
                  "non-dominant channel is not a manual channel",
                  non_dominant_channel);
    }
  }
}

namespace {

std::string describe(const GlossAnnotation& a) {
  std::ostringstream os;
  os << a.tier << ":" << a.gloss << "[" << a.start_ms << "," << a.end_ms << ")";
  return os.str();
}

// Touching intervals (a.end == b.start) do not overlap.
bool overlaps(const GlossAnnotation& a, const GlossAnnotation& b) {
  return a.start_ms < b.end_ms && b.start_ms < a.end_ms;
}

void check_group_overlap(const std::vector<const GlossAnnotation*>& group,
                         ViolationKind kind, const std::string& where,
                         std::vector<Violation>& out) {
  std::vector<const GlossAnnotation*> sorted = group;
  std::sort(sorted.begin(), sorted.end(),
            [](const GlossAnnotation* a, const GlossAnnotation* b) {
              return std::tie(a->start_ms, a->end_ms) <
                     std::tie(b->start_ms, b->end_ms);
            });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const auto* prev = sorted[i - 1];
    const auto* cur = sorted[i];
    if (overlaps(*prev, *cur)) {
      out.push_back({kind, where + ": " + describe(*prev) + " overlaps " +
                               describe(*cur)});
    }
  }
}

}  // namespace

std::vector<Violation> validate_document(const TimeAlignedDocument& doc,
                                         const ChannelMapping& mapping) {
  std::vector<Violation> out;
  std::map<std::string, std::vector<const GlossAnnotation*>> per_tier;
  std::map<std::string, std::vector<const GlossAnnotation*>> per_channel;

  for (const auto& a : doc.annotations) {
    if (a.start_ms >= a.end_ms) {
      out.push_back({ViolationKind::BadInterval,
                     "annotation has start >= end: " + describe(a)});
    }
    if (!is_valid_gloss(a.gloss)) {
      out.push_back({ViolationKind::BadGloss,
                     "gloss is empty, has whitespace, or has a leading/"
                     "trailing ':': " + describe(a)});
    }
    per_tier[a.tier].push_back(&a);
    const auto* channels = mapping.channels_for(a.tier);
    if (channels == nullptr) {
      out.push_back({ViolationKind::UnmappedTier,
                     "tier has no mapping entry: " + a.tier});
      continue;
    }
    for (const auto& channel : *channels) {
      per_channel[channel].push_back(&a);
    }
  }

  for (const auto& [tier, group] : per_tier) {
    check_group_overlap(group, ViolationKind::OverlapInTier, "tier " + tier, out);
  }
  for (const auto& [channel, group] : per_channel) {
    check_group_overlap(group, ViolationKind::OverlapInChannel,
                        "channel " + channel, out);
  }
  return out;
}

std::vector<std::int64_t> boundary_times(const TimeAlignedDocument& doc) {
  std::vector<std::int64_t> times;
  times.reserve(doc.annotations.size() * 2);
  for (const auto& a : doc.annotations) {
    times.push_back(a.start_ms);
    times.push_back(a.end_ms);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

}  // namespace signbleu
