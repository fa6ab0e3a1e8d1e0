#include "signbleu/linearize.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <iostream>

namespace signbleu {

namespace {

std::string token_detail(std::size_t index, const std::string& text) {
  std::ostringstream os;
  os << "token " << index << ": " << text;
  return os.str();
}

[[noreturn]] void grammar_error(const std::string& message, std::size_t index,
                                const std::string& text) {
  throw Error(ErrorCode::GrammarError, message, token_detail(index, text));
}

}  // namespace

std::string format_token(const SignToken& token) {
  switch (token.kind) {
    case TokenKind::OverlapPartial: return "~";
    case TokenKind::OverlapSimul: return "&";
    case TokenKind::NonManual: return token.channel + "=" + token.gloss;
    case TokenKind::Manual:
      switch (token.hand) {
        case Hand::Dominant: return "D::" + token.gloss;
        case Hand::NonDominant: return "ND::" + token.gloss;
        case Hand::Both: return "B::" + token.gloss;
      }
  }
  return "";
}

std::string format_tokens(const TokenSequence& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += " ";
    out += format_token(tokens[i]);
  }
  return out;
}

SignToken parse_token(const std::string& text) {
  if (text == "~") return {TokenKind::OverlapPartial, Hand::Dominant, "", ""};
  if (text == "&") return {TokenKind::OverlapSimul, Hand::Dominant, "", ""};
  for (const auto& [prefix, hand] :
       {std::pair<std::string, Hand>{"D::", Hand::Dominant},
        {"ND::", Hand::NonDominant},
        {"B::", Hand::Both}}) {
    if (text.rfind(prefix, 0) == 0) {
      const std::string gloss = text.substr(prefix.size());
      if (!is_valid_gloss(gloss)) {
        throw Error(ErrorCode::GrammarError, "manual token has a bad gloss", text);
      }
      return {TokenKind::Manual, hand, "", gloss};
    }
  }
  const std::size_t eq = text.find('=');
  if (eq != std::string::npos && eq > 0) {
    const std::string channel = text.substr(0, eq);
    const std::string gloss = text.substr(eq + 1);
    if (!is_valid_gloss(gloss)) {
      throw Error(ErrorCode::GrammarError, "non-manual token has a bad gloss",
                  text);
    }
    return {TokenKind::NonManual, Hand::Dominant, channel, gloss};
  }
  throw Error(ErrorCode::GrammarError, "unknown token form", text);
}

TokenSequence parse_tokens(const std::string& line) {
  TokenSequence out;
  std::istringstream is(line);
  std::string word;
  while (is >> word) out.push_back(parse_token(word));
  return out;
}

namespace {

struct Span {
  std::string gloss;
  int start = 0;
  int end = 0;  // inclusive column indices
};

std::vector<Span> row_spans(const BlockMatrix& b, int row) {
  std::vector<Span> out;
  if (row < 0) return out;
  const auto ncols = static_cast<int>(b.columns.size());
  for (int j = 0; j < ncols; ++j) {
    const BlockCell& cell = b.columns[static_cast<std::size_t>(j)]
                                     [static_cast<std::size_t>(row)];
    if (cell.is_null() || cell.cont_prev) continue;
    int end = j;
    while (end + 1 < ncols &&
           b.columns[static_cast<std::size_t>(end)][static_cast<std::size_t>(row)]
               .cont_next) {
      ++end;
    }
    out.push_back({cell.gloss, j, end});
  }
  return out;
}

struct ManualSign {
  Hand hand = Hand::Dominant;
  std::string gloss;
  int start = 0;
  int end = 0;
};

struct NonManualSign {
  std::string channel;
  int channel_index = 0;
  std::string gloss;
  int start = 0;
  int end = 0;
};

int hand_rank(Hand hand) { return hand == Hand::NonDominant ? 1 : 0; }

}  // namespace

TokenSequence linearize(const BlockMatrix& b, const ChannelMapping& mapping) {
  if (mapping.manual_channels.empty() || mapping.dominant_channel.empty() ||
      mapping.non_dominant_channel.empty()) {
    throw Error(ErrorCode::NoManualChannels,
                "mapping defines no manual channels");
  }
  const int dom_row = b.channel_index(mapping.dominant_channel);
  const int nd_row = b.channel_index(mapping.non_dominant_channel);

  std::vector<ManualSign> manuals;
  {
    const std::vector<Span> dom = row_spans(b, dom_row);
    std::vector<Span> nd = row_spans(b, nd_row);
    std::vector<bool> nd_used(nd.size(), false);
    for (const Span& d : dom) {
      bool merged = false;
      for (std::size_t i = 0; i < nd.size(); ++i) {
        if (!nd_used[i] && nd[i].gloss == d.gloss && nd[i].start == d.start &&
            nd[i].end == d.end) {
          manuals.push_back({Hand::Both, d.gloss, d.start, d.end});
          nd_used[i] = true;
          merged = true;
          break;
        }
      }
      if (!merged) manuals.push_back({Hand::Dominant, d.gloss, d.start, d.end});
    }
    for (std::size_t i = 0; i < nd.size(); ++i) {
      if (!nd_used[i]) {
        manuals.push_back({Hand::NonDominant, nd[i].gloss, nd[i].start, nd[i].end});
      }
    }
  }
  std::sort(manuals.begin(), manuals.end(),
            [](const ManualSign& a, const ManualSign& b) {
              if (a.start != b.start) return a.start < b.start;
              if (hand_rank(a.hand) != hand_rank(b.hand)) {
                return hand_rank(a.hand) < hand_rank(b.hand);
              }
              return a.gloss < b.gloss;
            });

  std::vector<NonManualSign> nonmanuals;
  for (std::size_t row = 0; row < b.channels.size(); ++row) {
    const int r = static_cast<int>(row);
    if (r == dom_row || r == nd_row) continue;
    for (const Span& span : row_spans(b, r)) {
      nonmanuals.push_back({b.channels[row], r, span.gloss, span.start, span.end});
    }
  }

  // Per manual: attachments placed before (start at or before the manual's
  // start column) and after (start strictly inside the manual).
  std::vector<std::vector<const NonManualSign*>> befores(manuals.size());
  std::vector<std::vector<const NonManualSign*>> afters(manuals.size());
  for (const NonManualSign& x : nonmanuals) {
    for (std::size_t k = 0; k < manuals.size(); ++k) {
      const ManualSign& m = manuals[k];
      if (x.start <= m.end && m.start <= x.end) {
        (x.start <= m.start ? befores[k] : afters[k]).push_back(&x);
      }
    }
  }
  for (auto& list : befores) {
    std::sort(list.begin(), list.end(),
              [](const NonManualSign* a, const NonManualSign* b) {
                return std::tie(a->channel_index, a->gloss) <
                       std::tie(b->channel_index, b->gloss);
              });
  }
  for (auto& list : afters) {
    std::sort(list.begin(), list.end(),
              [](const NonManualSign* a, const NonManualSign* b) {
                return std::tie(a->start, a->channel_index, a->gloss) <
                       std::tie(b->start, b->channel_index, b->gloss);
              });
  }

  TokenSequence out;
  for (std::size_t k = 0; k < manuals.size(); ++k) {
    if (k > 0) {
      for (const NonManualSign* x : afters[k - 1]) {
        out.push_back({TokenKind::NonManual, Hand::Dominant, x->channel, x->gloss});
      }
      const ManualSign& prev = manuals[k - 1];
      const ManualSign& cur = manuals[k];
      if (cur.start == prev.start) {
        out.push_back({TokenKind::OverlapSimul, Hand::Dominant, "", ""});
      } else if (cur.start <= prev.end) {
        out.push_back({TokenKind::OverlapPartial, Hand::Dominant, "", ""});
      }
    }
    for (const NonManualSign* x : befores[k]) {
      out.push_back({TokenKind::NonManual, Hand::Dominant, x->channel, x->gloss});
    }
    out.push_back({TokenKind::Manual, manuals[k].hand, "", manuals[k].gloss});
  }
  if (!manuals.empty()) {
    for (const NonManualSign* x : afters.back()) {
      out.push_back({TokenKind::NonManual, Hand::Dominant, x->channel, x->gloss});
    }
  }
  return out;
}

namespace {

enum class Marker { None, Tilde, Amp };

struct Attachment {
  std::string channel;
  std::string gloss;
  std::size_t token_index = 0;
};

struct ManualNode {
  Hand hand = Hand::Dominant;
  std::string gloss;
  Marker marker = Marker::None;
  std::size_t token_index = 0;
  // Tokens between the previous manual and this one: everything before my
  // overlap marker (or the whole run when there is none), and everything
  // after it. Markerless runs are split later, when chain state is known.
  std::vector<Attachment> pre_run;
  std::vector<Attachment> post_marker;
};

struct LiftedNm {
  std::string channel;
  std::string gloss;
  int start = -1;
  int end = -1;          // inclusive columns
  std::size_t last_node = 0;
  bool last_was_after = false;
};

void check_distinct_channels(const std::vector<Attachment>& befores) {
  for (std::size_t i = 0; i < befores.size(); ++i) {
    for (std::size_t j = i + 1; j < befores.size(); ++j) {
      if (befores[i].channel == befores[j].channel) {
        grammar_error("two co-starting non-manuals on one channel",
                      befores[j].token_index,
                      befores[j].channel + "=" + befores[j].gloss);
      }
    }
  }
}

std::vector<int> hand_rows(Hand hand) {
  switch (hand) {
    case Hand::Dominant: return {0};
    case Hand::NonDominant: return {1};
    case Hand::Both: return {0, 1};
  }
  return {};
}

bool rows_intersect(Hand a, Hand b) {
  for (int r : hand_rows(a)) {
    for (int s : hand_rows(b)) {
      if (r == s) return true;
    }
  }
  return false;
}

BlockMatrix delinearize_impl(const TokenSequence& tokens,
                             const ChannelMapping& mapping,
                             bool bind_prior_on_echo) {
  mapping.validate();
  if (mapping.manual_channels.empty() || mapping.dominant_channel.empty() ||
      mapping.non_dominant_channel.empty()) {
    throw Error(ErrorCode::NoManualChannels,
                "mapping defines no manual channels");
  }

  // Parse into manual nodes with before/after attachment lists.
  std::vector<ManualNode> nodes;
  std::vector<Attachment> pending;
  std::vector<Attachment> pre_marker;
  std::optional<Marker> marker;
  std::size_t marker_index = 0;

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const SignToken& token = tokens[i];
    switch (token.kind) {
      case TokenKind::NonManual: {
        if (!mapping.is_channel(token.channel)) {
          grammar_error("non-manual token on an unknown channel", i,
                        format_token(token));
        }
        if (token.channel == mapping.dominant_channel ||
            token.channel == mapping.non_dominant_channel) {
          grammar_error("non-manual token on a manual channel", i,
                        format_token(token));
        }
        pending.push_back({token.channel, token.gloss, i});
        break;
      }
      case TokenKind::OverlapPartial:
      case TokenKind::OverlapSimul: {
        if (marker.has_value()) {
          grammar_error("consecutive overlap tokens", i, format_token(token));
        }
        if (nodes.empty()) {
          grammar_error("overlap token before the first manual token", i,
                        format_token(token));
        }
        marker = token.kind == TokenKind::OverlapPartial ? Marker::Tilde
                                                         : Marker::Amp;
        marker_index = i;
        pre_marker = std::move(pending);
        pending.clear();
        break;
      }
      case TokenKind::Manual: {
        ManualNode node;
        node.hand = token.hand;
        node.gloss = token.gloss;
        node.token_index = i;
        if (marker.has_value()) {
          node.marker = *marker;
          node.pre_run = std::move(pre_marker);
          node.post_marker = std::move(pending);
        } else {
          node.pre_run = std::move(pending);
        }
        pending.clear();
        pre_marker.clear();
        marker.reset();
        nodes.push_back(std::move(node));
        break;
      }
    }
  }
  if (marker.has_value()) {
    grammar_error("dangling overlap token", marker_index,
                  format_token(tokens[marker_index]));
  }
  if (nodes.empty()) {
    if (!pending.empty()) {
      grammar_error("non-manual token with no manual token to attach to",
                    pending.front().token_index,
                    pending.front().channel + "=" + pending.front().gloss);
    }
    BlockMatrix empty;
    empty.channels = mapping.channel_order;
    return empty;
  }
  std::vector<Attachment> trailing_run = std::move(pending);

  // Hand compatibility along overlap markers. Co-start groups are chains of
  // Amp markers; every pair inside a group shares a column.
  std::size_t group_start = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].marker == Marker::Amp) {
      for (std::size_t j = group_start; j < k; ++j) {
        if (rows_intersect(nodes[j].hand, nodes[k].hand)) {
          grammar_error("co-starting signs collide on one hand",
                        nodes[k].token_index, format_token(tokens[nodes[k].token_index]));
        }
      }
    } else {
      group_start = k;
      if (nodes[k].marker == Marker::Tilde &&
          rows_intersect(nodes[k - 1].hand, nodes[k].hand)) {
        grammar_error("overlapping signs collide on one hand",
                      nodes[k].token_index, format_token(tokens[nodes[k].token_index]));
      }
    }
  }

  // Column planning. Non-manual chains merge a before-attachment with a
  // matching attachment on the previous manual, which is how a continued
  // signal is written; afters can continue through a "~" or "&" link into
  // the next sign.
  std::vector<int> start(nodes.size(), 0);
  std::vector<int> own_end(nodes.size(), 0);
  std::vector<int> final_end(nodes.size(), 0);
  std::vector<LiftedNm> lifted;
  int hwm = -1;

  // A channel can hold several live chains at once (a long signal passing
  // through a sign's start plus separate attachments inside it). Co-starting
  // continuations bind the latest matching chain (the geometrically
  // nearest); echoes of a shared after-attachment bind the earliest, since
  // signals inside both signs precede the exclusive ones.
  auto find_chain = [&](const Attachment& a, std::size_t anchor_node,
                        bool require_after, bool forbid_after) -> LiftedNm* {
    for (auto it = lifted.rbegin(); it != lifted.rend(); ++it) {
      if (it->channel != a.channel || it->last_node != anchor_node) continue;
      if (it->gloss != a.gloss) continue;
      if (require_after && !it->last_was_after) continue;
      if (forbid_after && it->last_was_after) continue;
      return &*it;
    }
    return nullptr;
  };

  // After-attachments of sign j, in run order. Each takes a fresh column so
  // re-emission preserves the run order; the only merges are echoes of a
  // signal already shared with the previous sign through "&" (one signal
  // inside two co-started signs) or a deferred "~" double that already sits
  // past the handoff column inside both spans.
  auto place_afters = [&](std::size_t j, const std::vector<Attachment>& afters) {
    for (const Attachment& a : afters) {
      // Echo of a signal already shared with the previous sign: bind the
      // earliest eligible twin, since shared attachments precede exclusive
      // ones; under "~" only a chain past the handoff reaches this sign.
      LiftedNm* chain = nullptr;
      if (j > 0 && nodes[j].marker != Marker::None) {
        const bool tilde = nodes[j].marker == Marker::Tilde;
        for (auto& candidate : lifted) {
          if (candidate.channel != a.channel || candidate.gloss != a.gloss) continue;
          if (candidate.last_node != j - 1 || !candidate.last_was_after) continue;
          if (tilde && candidate.start < start[j]) continue;
          chain = &candidate;
          break;
        }
      }
      if (chain != nullptr) {
        own_end[j] = std::max(own_end[j], chain->end);
        chain->last_node = j;
        chain->last_was_after = true;
      } else {
        hwm += 1;
        lifted.push_back({a.channel, a.gloss, hwm, hwm, j, true});
        own_end[j] = std::max(own_end[j], hwm);
      }
    }
    final_end[j] = std::max(final_end[j], own_end[j]);
  };

  // Co-started signs sharing a gloss must not also share an end column, or
  // re-linearization would fuse them into one two-handed sign.
  auto close_group = [&](std::size_t last) {
    std::size_t first = last;
    while (first > 0 && nodes[first].marker == Marker::Amp) --first;
    for (std::size_t i = first; i <= last; ++i) {
      for (std::size_t j = i + 1; j <= last; ++j) {
        if (nodes[i].gloss == nodes[j].gloss && start[i] == start[j] &&
            final_end[i] == final_end[j]) {
          hwm += 1;
          final_end[j] = hwm;
          own_end[j] = hwm;
        }
      }
    }
  };

  for (std::size_t k = 0; k < nodes.size(); ++k) {
    ManualNode& node = nodes[k];

    // Resolve the run before this sign into afters of the previous sign and
    // this sign's before-attachments. Under "~", afters of the previous sign
    // that follow the source of a continued signal must sit past the shared
    // handoff column (inside both spans), so their placement is deferred
    // until this sign's start column exists.
    std::vector<Attachment> befores;
    std::vector<Attachment> deferred;
    if (k == 0) {
      befores = std::move(node.pre_run);
      check_distinct_channels(befores);
    } else if (node.marker == Marker::Tilde) {
      befores = std::move(node.post_marker);
      check_distinct_channels(befores);
      const std::vector<Attachment>& run = node.pre_run;
      std::size_t defer_start = run.size();
      std::vector<bool> consumed(run.size(), false);

      // This sign's own attachments, read ahead syntactically, tell which of
      // the previous sign's attachments continue into this sign's span. For
      // source binding only the run's plausible afters count as echoes; its
      // channel-sorted tail may be before-attachments of the sign after this
      // one and must not mask a source.
      const std::vector<Attachment>& next_afters =
          k + 1 >= nodes.size() ? trailing_run : nodes[k + 1].pre_run;
      std::size_t next_prefix_size = next_afters.size();
      if (k + 1 < nodes.size() && nodes[k + 1].marker == Marker::None) {
        std::size_t suffix = next_afters.size();
        while (suffix > 0) {
          if (suffix < next_afters.size() &&
              mapping.channel_index(next_afters[suffix - 1].channel) >=
                  mapping.channel_index(next_afters[suffix].channel)) {
            break;
          }
          --suffix;
        }
        next_prefix_size = suffix;
      }

      // A signal continued into this sign's first column occupies this
      // channel up to the handoff; later same-channel attachments of the
      // previous sign can only sit past it.
      for (const Attachment& b : befores) {
        // The continued signal is the last matching attachment that is not
        // itself echoed among this sign's afters; echoed twins lie past the
        // handoff column and cannot reach back to this sign's first column.
        std::vector<std::size_t> occurrences;
        for (std::size_t i = 0; i < run.size(); ++i) {
          if (run[i].channel == b.channel && run[i].gloss == b.gloss) {
            occurrences.push_back(i);
          }
        }
        std::size_t echoes = 0;
        if (bind_prior_on_echo) {
          for (std::size_t e = 0; e < next_prefix_size; ++e) {
            if (next_afters[e].channel == b.channel &&
                next_afters[e].gloss == b.gloss) {
              ++echoes;
            }
          }
        }
        std::ptrdiff_t anchor =
            occurrences.size() > echoes
                ? static_cast<std::ptrdiff_t>(
                      occurrences[occurrences.size() - 1 - echoes])
                : -1;
        const bool prior = find_chain(b, k - 1, false, false) != nullptr;
#ifdef SB_DEBUG_LIFT
        std::cerr << "node " << k << " before " << b.channel << "=" << b.gloss
                  << " occ=" << occurrences.size() << " echoes=" << echoes
                  << " anchor=" << anchor << " prior=" << prior << "\n";
#endif
        if (anchor < 0 && !prior) continue;
        if (anchor >= 0) consumed[static_cast<std::size_t>(anchor)] = true;
        const std::size_t scan_from =
            anchor < 0 ? 0 : static_cast<std::size_t>(anchor) + 1;
        for (std::size_t i = scan_from; i < run.size(); ++i) {
          if (run[i].channel == b.channel) {
            defer_start = std::min(defer_start, i);
            break;
          }
        }
      }
      place_afters(k - 1, std::vector<Attachment>(
                              run.begin(),
                              run.begin() + static_cast<long>(defer_start)));
      deferred.assign(run.begin() + static_cast<long>(defer_start), run.end());
    } else if (node.marker == Marker::Amp) {
      place_afters(k - 1, node.pre_run);
      befores = std::move(node.post_marker);
      check_distinct_channels(befores);
    } else {
      // Canonical before-attachments form a channel-sorted, channel-distinct
      // suffix; everything earlier attaches back to the previous sign.
      const std::vector<Attachment>& run = node.pre_run;
      // A sign leading an "&" group shares its first column with the whole
      // group, so a before-attachment there must be echoed after the "&";
      // a lone token cannot co-start the group and reads as an after.
      auto echoed_in_group = [&](const Attachment& a) {
        if (k + 1 >= nodes.size() || nodes[k + 1].marker != Marker::Amp) {
          return true;
        }
        for (const Attachment& twin : nodes[k + 1].post_marker) {
          if (twin.channel == a.channel && twin.gloss == a.gloss) return true;
        }
        return false;
      };
      // A signal that was shared across the previous "~" link sits inside
      // the previous sign and emits here no matter what, so its token is
      // that echo, not a fresh co-start.
      auto claimed_as_after = [&](std::size_t position) {
        if (k < 2 || nodes[k - 1].marker != Marker::Tilde) return false;
        const Attachment& a = run[position];
        for (std::size_t q = 0; q < position; ++q) {
          if (run[q].channel == a.channel && run[q].gloss == a.gloss) {
            return false;  // the earlier token is the echo
          }
        }
        const LiftedNm* chain = find_chain(a, k - 2, true, false);
        return chain != nullptr && chain->start >= start[k - 1];
      };
      std::size_t split = run.size();
      while (split > 0) {
        const Attachment& candidate = run[split - 1];
        if (claimed_as_after(split - 1)) break;
        if (!echoed_in_group(candidate)) break;
        if (split < run.size() &&
            mapping.channel_index(candidate.channel) >=
                mapping.channel_index(run[split].channel)) {
          break;
        }
        --split;
      }
      place_afters(k - 1,
                   std::vector<Attachment>(run.begin(),
                                           run.begin() + static_cast<long>(split)));
      befores.assign(run.begin() + static_cast<long>(split), run.end());
    }

    if (k > 0 && node.marker != Marker::Amp) close_group(k - 1);

    switch (k == 0 ? Marker::None : node.marker) {
      case Marker::None:
      case Marker::Tilde:
        start[k] = hwm + 1;
        hwm = start[k];
        if (k > 0 && node.marker == Marker::Tilde) {
          final_end[k - 1] = std::max(final_end[k - 1], start[k]);
        }
        break;
      case Marker::Amp:
        start[k] = start[k - 1];
        break;
    }
    own_end[k] = start[k];
    final_end[k] = std::max(final_end[k], start[k]);

    for (const Attachment& a : befores) {
      // Under "&" only a co-started before-chain can reach this sign's first
      // column; an attachment inside the previous sign starts too late.
      LiftedNm* chain = k == 0 ? nullptr
                               : find_chain(a, k - 1, false,
                                            node.marker == Marker::Amp);
      if (chain != nullptr) {
        // Continuing to this sign's first column must not cross other
        // signals on the same channel; if it would, this token opens a new
        // annotation instead.
        for (const LiftedNm& other : lifted) {
          if (&other == chain || other.channel != chain->channel) continue;
          if (other.end > chain->end && other.start <= start[k]) {
            chain = nullptr;
            break;
          }
        }
      }
      if (chain != nullptr) {
        chain->end = std::max(chain->end, start[k]);
        chain->last_node = k;
        chain->last_was_after = false;
      } else if (node.marker != Marker::None && k > 0) {
        // Under "~" or "&" the new manual's first column lies inside the
        // previous sign's area, so a fresh non-manual cannot start there.
        grammar_error(
            "non-manual cannot start at a column shared with the previous sign",
            a.token_index, a.channel + "=" + a.gloss);
      } else {
        lifted.push_back({a.channel, a.gloss, start[k], start[k], k, false});
      }
    }

    for (const Attachment& a : deferred) {
      hwm += 1;
      lifted.push_back({a.channel, a.gloss, hwm, hwm, k - 1, true});
      final_end[k - 1] = std::max(final_end[k - 1], hwm);
      own_end[k] = std::max(own_end[k], hwm);
    }
    final_end[k] = std::max(final_end[k], own_end[k]);
  }
  place_afters(nodes.size() - 1, trailing_run);
  close_group(nodes.size() - 1);

  // Materialize a document on a virtual timeline (column index = time) and
  // let blockify derive the matrix.
  ChannelMapping synthetic;
  synthetic.channel_order = mapping.channel_order;
  synthetic.manual_channels = mapping.manual_channels;
  synthetic.dominant_channel = mapping.dominant_channel;
  synthetic.non_dominant_channel = mapping.non_dominant_channel;
  for (const auto& channel : mapping.channel_order) {
    synthetic.entries.push_back({channel, {channel}});
  }
  const std::string both_tier = "__both";
  synthetic.entries.push_back(
      {both_tier, {mapping.dominant_channel, mapping.non_dominant_channel}});

  TimeAlignedDocument doc;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    std::string tier;
    switch (nodes[k].hand) {
      case Hand::Dominant: tier = mapping.dominant_channel; break;
      case Hand::NonDominant: tier = mapping.non_dominant_channel; break;
      case Hand::Both: tier = both_tier; break;
    }
    doc.annotations.push_back(
        {tier, start[k], static_cast<std::int64_t>(final_end[k]) + 1,
         nodes[k].gloss});
  }
  for (const LiftedNm& x : lifted) {
    doc.annotations.push_back(
        {x.channel, x.start, static_cast<std::int64_t>(x.end) + 1, x.gloss});
  }
  doc.normalize();

  try {
    return blockify(doc, synthetic);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ChannelCollision) {
      throw Error(ErrorCode::GrammarError,
                  "attachments cannot be lifted without overlapping signals",
                  e.detail());
    }
    throw;
  }
}

}  // namespace

BlockMatrix delinearize(const TokenSequence& tokens, const ChannelMapping& mapping) {
  // The grammar sometimes underdetermines whether a co-starting continuation
  // stems from an earlier signal or from an attachment written in the same
  // run. Lift under the standard reading first and keep it when its
  // re-linearization reproduces the input; otherwise try the alternate
  // binding before settling.
  BlockMatrix primary;
  bool have_primary = false;
  try {
    primary = delinearize_impl(tokens, mapping, true);
    have_primary = true;
    if (linearize(primary, mapping) == tokens) return primary;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::GrammarError) throw;
    primary = BlockMatrix{};
  }
  try {
    BlockMatrix alternate = delinearize_impl(tokens, mapping, false);
    if (!have_primary || linearize(alternate, mapping) == tokens) {
      return alternate;
    }
  } catch (const Error&) {
    if (!have_primary) throw;
  }
  if (have_primary) return primary;
  return delinearize_impl(tokens, mapping, true);  // surface the original error
}

}  // namespace signbleu
