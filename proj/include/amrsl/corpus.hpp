#pragma once

// Corpus block files:
//
//   # ::id r1
//   # ::snt The boy wants to go .
//   # ::tok The boy wants to go .
//   # ::alignments 1-1|b 2-2|w 4-4|g
//   (w / want-01
//       :ARG0 (b / boy)
//       :ARG1 (g / go-02 :ARG0 b))
//
// Records are separated by blank lines. `::tok` takes precedence over a
// whitespace split of `::snt`. Other `# ::key value` fields are kept in
// order and written back unchanged.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amrsl/graph.hpp"
#include "amrsl/penman.hpp"

namespace amrsl {

struct CorpusRecord {
  Sentence sentence;
  AmrGraph graph;
  std::optional<Alignment> alignment;
  std::vector<std::pair<std::string, std::string>> metadata;

  // Value of an extra metadata field, if present.
  std::optional<std::string> meta(std::string_view key) const;
};

using Corpus = std::vector<CorpusRecord>;

Corpus parse_corpus(std::string_view text, ParseMode mode = ParseMode::kStrict,
                    const std::string& source = "<input>");
Corpus read_corpus(const std::filesystem::path& path, ParseMode mode = ParseMode::kStrict);

std::string format_corpus(const Corpus& corpus);
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

// `start-end|var` pairs separated by spaces.
Alignment parse_alignment(std::string_view field);
std::string format_alignment(const Alignment& al);

// Throws InputError on a repeated record id.
void check_unique_ids(const Corpus& corpus);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace amrsl
