#pragma once

#include <string_view>

namespace persym {

// Where a rank count came from.
enum class Source { Enumerated, BakedTable, ClosedForm };

constexpr std::string_view to_string(Source s) noexcept {
  switch (s) {
    case Source::Enumerated: return "Enumerated";
    case Source::BakedTable: return "BakedTable";
    case Source::ClosedForm: return "ClosedForm";
  }
  return "?";
}

}  // namespace persym
