#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "snowfake/engine.hpp"
#include "snowfake/model.hpp"

namespace snowfake {

inline constexpr std::uint32_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Checkpoint {
  RunConfig config;
  SimState state;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

/// Binary layout: "SNOWCKPT", u32 version, then records of
/// (u32 tag, u64 length, payload, u32 CRC-32 of payload), all little-endian.
/// Records: HEAD (domain, fold, t, rng seed, stage, initial mass), CONF (the
/// rendered run config), ATTA (flags), BMAS and DMAS (f64 per stored site).
std::string encodeCheckpoint(const RunConfig& config, const SimState& state);
Checkpoint decodeCheckpoint(const std::string& bytes);

void writeCheckpoint(const std::filesystem::path& path, const RunConfig& config,
                     const SimState& state);
/// Throws CheckpointError on a missing or unreadable file, version mismatch,
/// truncation, checksum failure or inconsistent records.
Checkpoint readCheckpoint(const std::filesystem::path& path);

}  // namespace snowfake
