#pragma once

#include <string>
#include <vector>

#include "signbleu/block.hpp"

namespace signbleu {

enum class TokenKind { Manual, NonManual, OverlapPartial, OverlapSimul };
enum class Hand { Dominant, NonDominant, Both };

/// One token of the linear grammar. Surface forms:
///   Manual          "D::gloss" | "ND::gloss" | "B::gloss"
///   NonManual       "<channel>=gloss"
///   OverlapPartial  "~"   (starts after but overlaps the previous manual)
///   OverlapSimul    "&"   (starts together with the previous manual)
struct SignToken {
  TokenKind kind = TokenKind::Manual;
  Hand hand = Hand::Dominant;  // Manual only
  std::string channel;         // NonManual only
  std::string gloss;           // Manual / NonManual

  friend bool operator==(const SignToken&, const SignToken&) = default;
};

using TokenSequence = std::vector<SignToken>;

std::string format_token(const SignToken& token);
std::string format_tokens(const TokenSequence& tokens);  // space-separated

/// Parses one surface token. Throws Error(GrammarError) on an unknown form.
SignToken parse_token(const std::string& text);
/// Splits a space-separated line into tokens.
TokenSequence parse_tokens(const std::string& line);

/// Flattens a block matrix into the token grammar. Manual signs are listed
/// by start column; a gloss with identical start and end on both manual rows
/// becomes one B:: token. "&" precedes a manual that starts at the previous
/// manual's start column, "~" one that starts strictly inside the previous
/// manual's span. Every non-manual annotation attaches to each manual it
/// shares a column with: before the manual when the non-manual starts at or
/// before the manual's start column, after it otherwise. A run of identical
/// attachments on adjacent manuals reads as one continued signal.
///
/// Non-manuals that overlap no manual sign are dropped (the linear form
/// cannot anchor them), and exact column alignment is not preserved; the
/// block form remains the canonical representation.
TokenSequence linearize(const BlockMatrix& b, const ChannelMapping& mapping);

/// Lifts a token sequence to a canonical block matrix: every manual opens a
/// fresh column group, "&" aligns start columns, "~" continues the previous
/// manual into the new manual's first column, and attachment runs become
/// annotations spanning the attached manuals' columns. Re-linearizing the
/// result reproduces sequences produced by linearize, except for signing the
/// token grammar cannot carry: a sign fully nested inside another (the "~"
/// partner ending first) leaves the position of later co-occurring material
/// unencoded, so such lifts are well-formed but may re-linearize with
/// attachments anchored to different signs. Inputs that order attachments
/// differently from the canonical emission are likewise lifted without being
/// fixed points.
///
/// Throws Error(GrammarError) with the offending token index for malformed
/// sequences: a leading or dangling overlap token, consecutive overlap
/// tokens, an unknown token form, a non-manual on an unknown or manual
/// channel, attachments no lifting can satisfy, or overlapping signs on one
/// hand.
BlockMatrix delinearize(const TokenSequence& tokens, const ChannelMapping& mapping);

}  // namespace signbleu
