#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace weylsym {

/// Position of a symbol inside its SymbolTable. Exponent vectors index by it.
struct SymbolId {
  std::uint8_t index = 0;

  friend constexpr bool operator==(SymbolId, SymbolId) = default;
  friend constexpr auto operator<=>(SymbolId, SymbolId) = default;
};

enum class SymbolKind {
  State,
  Independent,
  Parameter,
  Constant,
  ExpGenerator,
};

struct Symbol {
  std::string name;
  SymbolKind kind;
};

/// Ordered, immutable set of named symbols.
class SymbolTable {
 public:
  static constexpr std::size_t kMaxSymbols = 32;

  SymbolTable() = default;
  SymbolTable(std::initializer_list<Symbol> symbols) {
    for (const auto& s : symbols) push(s);
  }
  explicit SymbolTable(const std::vector<Symbol>& symbols) {
    for (const auto& s : symbols) push(s);
  }

  std::size_t size() const { return symbols_.size(); }
  const Symbol& operator[](SymbolId id) const { return symbols_.at(id.index); }
  const std::string& name(SymbolId id) const { return symbols_.at(id.index).name; }
  SymbolKind kind(SymbolId id) const { return symbols_.at(id.index).kind; }

  std::optional<SymbolId> find(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i].name == name) return SymbolId{static_cast<std::uint8_t>(i)};
    return std::nullopt;
  }

  SymbolId at(std::string_view name) const {
    if (auto id = find(name)) return *id;
    throw std::out_of_range("unknown symbol '" + std::string(name) + "'");
  }

  std::vector<SymbolId> of_kind(SymbolKind kind) const {
    std::vector<SymbolId> out;
    for (std::size_t i = 0; i < symbols_.size(); ++i)
      if (symbols_[i].kind == kind) out.push_back(SymbolId{static_cast<std::uint8_t>(i)});
    return out;
  }

 private:
  void push(const Symbol& s) {
    if (symbols_.size() >= kMaxSymbols) throw std::length_error("symbol table full");
    if (find(s.name)) throw std::invalid_argument("duplicate symbol '" + s.name + "'");
    if (s.name.empty()) throw std::invalid_argument("empty symbol name");
    symbols_.push_back(s);
  }

  std::vector<Symbol> symbols_;
};

}  // namespace weylsym
