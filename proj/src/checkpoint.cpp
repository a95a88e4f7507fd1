#include "snowfake/checkpoint.hpp"

#include <zlib.h>

#include <bit>
#include <fstream>
#include <iterator>
#include <map>

#include "snowfake/config.hpp"

namespace snowfake {

namespace {

constexpr char kMagic[8] = {'S', 'N', 'O', 'W', 'C', 'K', 'P', 'T'};

constexpr std::uint32_t tag(const char (&s)[5]) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(s[0])) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[1])) << 8 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[2])) << 16 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[3])) << 24;
}

constexpr std::uint32_t kHead = tag("HEAD");
constexpr std::uint32_t kConf = tag("CONF");
constexpr std::uint32_t kAtta = tag("ATTA");
constexpr std::uint32_t kBmas = tag("BMAS");
constexpr std::uint32_t kDmas = tag("DMAS");

void putU(std::string& out, std::uint64_t x, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((x >> (8 * i)) & 0xFF));
}

void putF(std::string& out, double x) { putU(out, std::bit_cast<std::uint64_t>(x), 8); }

std::uint32_t crc(const std::string& payload) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size())));
}

void putRecord(std::string& out, std::uint32_t t, const std::string& payload) {
  putU(out, t, 4);
  putU(out, payload.size(), 8);
  out += payload;
  putU(out, crc(payload), 4);
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  bool done() const { return pos_ == bytes_.size(); }
  std::uint64_t u(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t x = 0;
    for (int i = 0; i < n; ++i) {
      x |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(n);
    return x;
  }
  double f() { return std::bit_cast<double>(u(8)); }
  std::string_view take(std::size_t n) {
    need(n);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw CheckpointError("checkpoint is truncated");
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encodeCheckpoint(const RunConfig& config, const SimState& state) {
  std::string out(kMagic, sizeof kMagic);
  putU(out, kCheckpointVersion, 4);

  std::string head;
  putU(head, static_cast<std::uint32_t>(config.domain.radius), 4);
  putU(head, static_cast<std::uint32_t>(config.domain.halfHeight), 4);
  putU(head, static_cast<std::uint32_t>(config.domain.mode), 4);
  putU(head, static_cast<std::uint64_t>(state.time), 8);
  putU(head, config.schedule.stages.empty() ? 0 : config.schedule.initial().rngSeed, 8);
  putU(head, state.stage, 8);
  putF(head, state.initialMass);
  putU(head, state.attached.size(), 8);
  putRecord(out, kHead, head);

  putRecord(out, kConf, renderRunConfig(config));

  putRecord(out, kAtta, std::string(state.attached.begin(), state.attached.end()));
  std::string b;
  b.reserve(state.boundaryMass.size() * 8);
  for (double x : state.boundaryMass) putF(b, x);
  putRecord(out, kBmas, b);
  std::string d;
  d.reserve(state.diffusiveMass.size() * 8);
  for (double x : state.diffusiveMass) putF(d, x);
  putRecord(out, kDmas, d);
  return out;
}

Checkpoint decodeCheckpoint(const std::string& bytes) {
  Reader r(bytes);
  if (r.take(sizeof kMagic) != std::string_view(kMagic, sizeof kMagic)) {
    throw CheckpointError("not a checkpoint file");
  }
  const auto version = static_cast<std::uint32_t>(r.u(4));
  if (version != kCheckpointVersion) {
    throw CheckpointError("checkpoint version " + std::to_string(version) + " is not supported (expected " +
                          std::to_string(kCheckpointVersion) + ")");
  }
  std::map<std::uint32_t, std::string_view> records;
  while (!r.done()) {
    const auto t = static_cast<std::uint32_t>(r.u(4));
    const auto len = r.u(8);
    const auto payload = r.take(len);
    const auto sum = static_cast<std::uint32_t>(r.u(4));
    if (sum != crc(std::string(payload))) throw CheckpointError("checkpoint checksum mismatch");
    records[t] = payload;
  }
  for (auto t : {kHead, kConf, kAtta, kBmas, kDmas}) {
    if (!records.contains(t)) throw CheckpointError("checkpoint is truncated: record missing");
  }

  Checkpoint cp;
  try {
    cp.config = parseRunConfig(records[kConf]);
  } catch (const ConfigError& e) {
    throw CheckpointError(std::string("checkpoint config: ") + e.what());
  }
  Reader head(records[kHead]);
  const auto R = static_cast<int>(head.u(4));
  const auto H = static_cast<int>(head.u(4));
  const auto mode = static_cast<FoldMode>(head.u(4));
  cp.state.time = static_cast<std::int64_t>(head.u(8));
  const auto rngSeed = head.u(8);
  cp.state.stage = static_cast<std::size_t>(head.u(8));
  cp.state.initialMass = head.f();
  const auto n = static_cast<std::size_t>(head.u(8));
  const Domain& d = cp.config.domain;
  if (R != d.radius || H != d.halfHeight || mode != d.mode ||
      rngSeed != cp.config.schedule.initial().rngSeed ||
      cp.state.stage >= cp.config.schedule.stages.size()) {
    throw CheckpointError("checkpoint header disagrees with its config");
  }
  const auto atta = records[kAtta];
  const auto bmas = records[kBmas];
  const auto dmas = records[kDmas];
  if (atta.size() != n || bmas.size() != 8 * n || dmas.size() != 8 * n) {
    throw CheckpointError("checkpoint field sizes disagree");
  }
  cp.state.attached.assign(atta.begin(), atta.end());
  Reader rb(bmas), rd(dmas);
  cp.state.boundaryMass.resize(n);
  cp.state.diffusiveMass.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    cp.state.boundaryMass[i] = rb.f();
    cp.state.diffusiveMass[i] = rd.f();
  }
  return cp;
}

void writeCheckpoint(const std::filesystem::path& path, const RunConfig& config,
                     const SimState& state) {
  const std::string bytes = encodeCheckpoint(config, state);
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw CheckpointError("cannot write " + tmp.string());
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw CheckpointError("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint readCheckpoint(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CheckpointError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return decodeCheckpoint(bytes);
}

}  // namespace snowfake
