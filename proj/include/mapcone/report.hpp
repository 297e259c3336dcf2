#pragma once

#include <string>
#include <vector>

namespace mapcone {

struct CheckItem {
  std::string rule;     // which law failed
  std::string witness;  // the basis elements exhibiting the failure
  std::string detail;   // residual or expected-vs-actual rendering
};

struct CheckReport {
  std::vector<CheckItem> items;

  bool ok() const { return items.empty(); }

  void add(std::string rule, std::string witness, std::string detail) {
    items.push_back({std::move(rule), std::move(witness), std::move(detail)});
  }

  void merge(const CheckReport& o) {
    items.insert(items.end(), o.items.begin(), o.items.end());
  }

  std::string str() const {
    if (items.empty()) return "ok";
    std::string out;
    for (const auto& it : items) {
      out += it.rule + " at [" + it.witness + "]: " + it.detail + "\n";
    }
    return out;
  }
};

}  // namespace mapcone
