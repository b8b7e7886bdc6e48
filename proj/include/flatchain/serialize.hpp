#pragma once

// JSON chain documents ("flatchain/1"), figures and JSON-lines corpora.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flatchain/cubchain.hpp"
#include "flatchain/simplexchain.hpp"
#include "flatchain/slicing.hpp"
#include "flatchain/tensor.hpp"

namespace flatchain {

inline constexpr const char* kFormatVersion = "flatchain/1";

enum class ChainKind { coordinate, tensor, simplicial };

struct ChainDocument {
  ChainKind kind = ChainKind::coordinate;
  std::optional<CoordChain> coord;
  std::optional<TensorChain> tensor;
  std::optional<SimplexChain> simplicial;
  nlohmann::json metadata;  // null when absent

  static ChainDocument of(CoordChain c);
  static ChainDocument of(TensorChain t);
  static ChainDocument of(SimplexChain s);
};

nlohmann::json descriptor_to_json(const GroupDescriptor& g);
GroupDescriptor descriptor_from_json(const nlohmann::json& j);
nlohmann::json coefficient_to_json(const Coefficient& c);
Coefficient coefficient_from_json(const nlohmann::json& j, const GroupDescriptor& g);

// Coordinate chains are emitted canonicalized.
nlohmann::json to_json(const ChainDocument& doc);
// Throws ParseError naming the offending term on malformed or non-canonical input.
ChainDocument document_from_json(const nlohmann::json& j);

ChainDocument parse_document(const std::string& text);
std::string emit_document(const ChainDocument& doc);
ChainDocument read_document_file(const std::string& path);
void write_document_file(const std::string& path, const ChainDocument& doc);

// One document per line; blank lines are skipped.
std::vector<ChainDocument> read_corpus(std::istream& in);
void write_corpus(std::ostream& out, const std::vector<ChainDocument>& docs);

nlohmann::json figure_to_json(const Figure& f);
Figure figure_from_json(const nlohmann::json& j);

}  // namespace flatchain
