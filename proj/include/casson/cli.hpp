#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace casson::cli {

inline constexpr const char* kSchema = "casson/1";

enum Exit : int { kOk = 0, kParse = 1, kValidation = 2, kDisagreement = 3 };

struct MethodResult {
  std::string method;
  std::optional<long long> value;  // empty when not applicable
  std::string note;
};

struct BatchRecord {
  std::string name;
  std::string kind;  // gauss|pd|braid|torus|polyknot|tangle
  std::string payload;
  std::vector<MethodResult> results;
  bool agree = true;
  int chords = 0;
  long long bound = 0;
  bool bound_ok = true;
  bool sharp = false;
  std::string error;
  int error_code = kOk;
};

// Rows name,kind,payload with optional header and double-quoted fields. Throws
// std::runtime_error when the file cannot be read; row problems land in the records.
std::vector<BatchRecord> ingest_csv(const std::string& path);

// Fills results for one record; `methods` may contain "all".
void evaluate(BatchRecord& r, const std::vector<std::string>& methods, const std::string& base_dir = ".");

// Entry point of the casson executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace casson::cli
