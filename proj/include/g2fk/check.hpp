#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace g2fk {

enum class Status { Pass, Fail, Skip, Finding };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
    case Status::Finding: return "finding";
  }
  return "?";
}

/// One verified claim. Fail and finding results always carry a witness.
struct CheckResult {
  std::string id;
  Status status = Status::Pass;
  std::string expected;
  std::string actual;
  std::optional<std::string> witness;
  std::optional<long long> millis;

  bool ok() const { return status != Status::Fail; }
};

inline CheckResult make_check(std::string id, bool pass, std::string expected, std::string actual,
                              std::string witness_if_fail) {
  CheckResult r{std::move(id), pass ? Status::Pass : Status::Fail, std::move(expected), std::move(actual), {}, {}};
  if (!pass) {
    if (witness_if_fail.empty()) throw std::logic_error("failed check " + r.id + " has no witness");
    r.witness = std::move(witness_if_fail);
  }
  return r;
}

inline CheckResult make_finding(std::string id, std::string expected, std::string actual, std::string witness) {
  if (witness.empty()) throw std::logic_error("finding without witness");
  return {std::move(id), Status::Finding, std::move(expected), std::move(actual), std::move(witness), {}};
}

inline CheckResult make_skip(std::string id, std::string reason) {
  return {std::move(id), Status::Skip, "n/a", std::move(reason), {}, {}};
}

/// Runs fn() and stamps the elapsed wall time on every result it returns.
template <class Fn>
std::vector<CheckResult> timed(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<CheckResult> out = fn();
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  for (auto& r : out) r.millis = ms;
  return out;
}

inline std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

}  // namespace g2fk
