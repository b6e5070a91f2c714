#pragma once

// Structured verification reports.
//
// A report separates a deterministic *body* (schema, suite, type, config,
// check records, summary) from volatile extras (wall time, cache traffic)
// that only appear in the full rendering.  Two runs over the same inputs
// must serialize byte-identical bodies, so body content is ordered and
// derived purely from the computation.
//
// Each record carries the statement anchor it verifies, the inputs used,
// the computed values, and a verdict.  REPORT-ONLY marks observations that
// are recorded but never fail a run.

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "heckelab/cache.hpp"

namespace heckelab {

using OrderedJson = nlohmann::ordered_json;

inline constexpr const char* kVerdictPass = "PASS";
inline constexpr const char* kVerdictFail = "FAIL";
inline constexpr const char* kVerdictInfo = "REPORT-ONLY";

struct CheckRecord {
  std::string anchor;    // statement label, e.g. "Thm 3.5(a)"
  std::string name;      // what was checked
  OrderedJson inputs;    // parameters the check ran on
  OrderedJson computed;  // observed values
  std::string verdict;   // PASS | FAIL | REPORT-ONLY
};

class SuiteReport {
 public:
  SuiteReport(std::string suite, std::string type)
      : suite_(std::move(suite)), type_(std::move(type)),
        config_(OrderedJson::object()) {}

  void set_config(const std::string& key, const OrderedJson& value) {
    config_[key] = value;
  }

  void add(CheckRecord rec) { records_.push_back(std::move(rec)); }

  void add(const std::string& anchor, const std::string& name,
           OrderedJson inputs, OrderedJson computed, bool pass) {
    records_.push_back({anchor, name, std::move(inputs), std::move(computed),
                        pass ? kVerdictPass : kVerdictFail});
  }

  void add_info(const std::string& anchor, const std::string& name,
                OrderedJson inputs, OrderedJson computed) {
    records_.push_back({anchor, name, std::move(inputs), std::move(computed),
                        kVerdictInfo});
  }

  void set_timing_ms(double ms) { timing_ms_ = ms; }
  void set_cache(const CacheStats& st) { cache_ = st; }

  const std::vector<CheckRecord>& records() const { return records_; }

  int num_fail() const { return count(kVerdictFail); }
  int num_pass() const { return count(kVerdictPass); }
  int num_info() const { return count(kVerdictInfo); }
  bool all_pass() const { return num_fail() == 0; }

  // Deterministic part: byte-identical across reruns with equal inputs.
  OrderedJson body() const {
    OrderedJson recs = OrderedJson::array();
    for (const auto& r : records_) {
      OrderedJson j;
      j["anchor"] = r.anchor;
      j["name"] = r.name;
      j["inputs"] = r.inputs;
      j["computed"] = r.computed;
      j["verdict"] = r.verdict;
      recs.push_back(std::move(j));
    }
    OrderedJson summary;
    summary["checked"] = records_.size();
    summary["pass"] = num_pass();
    summary["fail"] = num_fail();
    summary["report_only"] = num_info();
    summary["verdict"] = all_pass() ? kVerdictPass : kVerdictFail;

    OrderedJson b;
    b["schema"] = "hecke-cell-lab/report-v1";
    b["suite"] = suite_;
    b["type"] = type_;
    b["config"] = config_;
    b["records"] = std::move(recs);
    b["summary"] = std::move(summary);
    return b;
  }

  // Body plus run-dependent extras (timing, cache traffic).
  OrderedJson full() const {
    OrderedJson j = body();
    j["timing_ms"] = timing_ms_;
    if (cache_.enabled) {
      OrderedJson c;
      c["file_present"] = cache_.file_present;
      c["records_loaded"] = cache_.loaded;
      c["records_rejected"] = cache_.rejected;
      c["records_stored"] = cache_.stored;
      j["cache"] = std::move(c);
    }
    return j;
  }

  std::string tsv() const {
    std::ostringstream out;
    out << "suite\ttype\tanchor\tname\tverdict\tinputs\tcomputed\n";
    for (const auto& r : records_) {
      out << suite_ << '\t' << type_ << '\t' << r.anchor << '\t' << r.name
          << '\t' << r.verdict << '\t' << r.inputs.dump() << '\t'
          << r.computed.dump() << '\n';
    }
    out << suite_ << '\t' << type_ << "\tsummary\t" << records_.size()
        << " checks\t" << (all_pass() ? kVerdictPass : kVerdictFail)
        << "\t{}\t{}\n";
    return out.str();
  }

 private:
  int count(const char* v) const {
    int k = 0;
    for (const auto& r : records_)
      if (r.verdict == v) ++k;
    return k;
  }

  std::string suite_;
  std::string type_;
  OrderedJson config_;
  std::vector<CheckRecord> records_;
  double timing_ms_ = 0.0;
  CacheStats cache_;
};

}  // namespace heckelab
