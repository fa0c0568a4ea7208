#ifndef MCDECK_PARSER_HPP
#define MCDECK_PARSER_HPP

#include <string>
#include <vector>

#include "mcdeck/deck.hpp"

namespace mcdeck {

// One physical card after continuation joining: the logical text plus the
// original source lines and stripped $-comments.
struct RawCard {
  std::string joined;              // single-space normalized card text
  std::vector<std::string> lines;  // source lines, verbatim
  std::vector<std::string> comments; // $-comment text per source line ("" if none)
  int line_no = 0;                 // 1-based line of the first source line

  // First $-comment found on any of the card's lines.
  std::string first_comment() const {
    for (const auto& c : comments)
      if (!c.empty()) return c;
    return {};
  }
};

struct SplitDeck {
  std::vector<std::string> message_lines;
  std::string title;
  std::vector<std::string> cell_lines;
  std::vector<std::string> surface_lines;
  std::vector<std::string> data_lines;
  std::string trailing; // text after the data block terminator
  int cell_line_no = 0;
  int surface_line_no = 0;
  int data_line_no = 0;
};

// Splits a file into title, the three card blocks and the trailing section.
// Throws MissingBlock when fewer than three blocks are present.
SplitDeck split_blocks(const std::string& text);

// Joins continuation lines (>= 5 leading blanks, trailing '&'), drops
// full-line comments and strips $-comments. A comment line interrupting a
// continuation sequence is repaired with a warning.
std::vector<RawCard> join_continuations(const std::vector<std::string>& lines,
                                        int first_line_no,
                                        std::vector<Diagnostic>& warnings);

CellCard parse_cell_card(const RawCard& raw, std::vector<Diagnostic>& warnings);
SurfaceCard parse_surface_card(const RawCard& raw,
                               std::vector<Diagnostic>& warnings);

// Classifies and parses the data block: tr cards, materials with their
// mt/mx/mpn attachments, everything else opaque. Appends to the deck.
void parse_data_cards(const std::vector<RawCard>& raws, Deck& deck,
                      std::vector<Diagnostic>& warnings);

// Full pipeline. Card-level failures are aggregated into one ParseFailure.
Deck parse_deck(const std::string& text, const std::string& source_path);

Deck parse_deck_file(const std::string& path);

} // namespace mcdeck

#endif
