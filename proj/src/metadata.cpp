#include "mcdeck/metadata.hpp"

#include <cctype>

#include "mcdeck/errors.hpp"

namespace mcdeck {

json get_group(const Deck& deck, const std::string& name,
               const std::string& key) {
  if (!deck.metadata.groups.contains(name))
    throw UnknownId("metadata group '" + name + "' not found");
  const json& group = deck.metadata.groups[name];
  if (!group.is_object() || !group.contains(key))
    throw UnknownId("metadata group '" + name + "' has no key '" + key + "'");
  return group[key];
}

TrCardInfo find_tr_card(const Deck& deck, int tr_id) {
  const TransformCard* card = deck.find_transform(tr_id);
  if (!card)
    throw UnknownId("transform card " + std::to_string(tr_id) + " not found");
  TrCardInfo info;
  info.translat = card->t.translation;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      info.rot[static_cast<std::size_t>(3 * r + c)] = card->t.rotation[r][c];
  return info;
}

namespace {

// A data card starts with a short alphabetic name, optional number and
// optional particle designator ("f4:p", "mode", "*tr5", "imp:n,p").
bool looks_like_card(const std::string& line) {
  std::size_t i = line.find_first_not_of(' ');
  if (i == std::string::npos || i >= 5) return false;
  std::size_t start = i;
  if (line[i] == '*') ++i;
  std::size_t letters = 0;
  while (i < line.size() && std::isalpha(static_cast<unsigned char>(line[i]))) {
    ++letters;
    ++i;
  }
  if (letters == 0 || letters > 6) return false;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i])))
    ++i;
  if (i < line.size() && line[i] == ':') {
    ++i;
    while (i < line.size() &&
           (std::isalpha(static_cast<unsigned char>(line[i])) ||
            line[i] == ','))
      ++i;
  }
  (void)start;
  return i >= line.size() || line[i] == ' ';
}

} // namespace

void add_card(Deck& deck, const std::vector<std::string>& lines) {
  if (lines.empty()) throw Error("add_card needs at least one line");
  for (const auto& line : lines)
    if (line.find_first_not_of(' ') == std::string::npos)
      throw Error("add_card rejects empty lines");

  for (const auto& line : lines) {
    bool continuation =
        !deck.other_cards.empty() && line.size() >= 5 &&
        line.compare(0, 5, "     ") == 0 &&
        deck.data_order.back().kind == DataSlot::Kind::Other;
    if (continuation) {
      deck.other_cards.back().raw_lines.push_back(line);
      continue;
    }
    OtherCard card;
    if (looks_like_card(line)) {
      std::string name = line.substr(0, line.find(' '));
      for (auto& ch : name) ch = std::tolower(static_cast<unsigned char>(ch));
      card.name = name;
      card.raw_lines.push_back(line);
    } else {
      card.name = "c";
      card.raw_lines.push_back("c " + line);
    }
    deck.other_cards.push_back(std::move(card));
    deck.push_data_slot(DataSlot::Kind::Other, deck.other_cards.size() - 1);
  }
}

void merge_metadata(MetadataBlock& host, MetadataBlock guest,
                    const IdMaps& maps, const std::string& guest_file,
                    std::vector<Diagnostic>& diags) {
  remap_metadata(guest, maps);
  for (auto& [name, group] : guest.groups.items()) {
    std::string target = name;
    if (host.groups.contains(target)) {
      target = name + "@" + guest_file;
      int n = 2;
      while (host.groups.contains(target))
        target = name + "@" + guest_file + "#" + std::to_string(n++);
      diags.push_back(Diagnostic::warning(
          "metadata group '" + name + "' already exists; guest copy renamed '" +
          target + "'"));
    }
    host.groups[target] = group;
  }
}

} // namespace mcdeck
