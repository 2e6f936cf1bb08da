#include "field_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <json.hpp>

#include "error.hpp"

namespace zkd {
namespace {

constexpr std::array<char, 4> kMagic{'Z', 'K', 'D', 'F'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "binary field format assumes a little-endian host");

void PutU32(std::string& out, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  out.append(b, 4);
}

void PutF64(std::string& out, double v) {
  char b[8];
  std::memcpy(b, &v, 8);
  out.append(b, 8);
}

class Reader {
 public:
  explicit Reader(const std::string& data) : data_(data) {}
  std::uint32_t U32() {
    std::uint32_t v;
    Take(&v, 4);
    return v;
  }
  double F64() {
    double v;
    Take(&v, 8);
    return v;
  }
  std::string Bytes(std::size_t n) {
    Need(n);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool AtEnd() const { return pos_ == data_.size(); }

 private:
  void Need(std::size_t n) const {
    Require(pos_ + n <= data_.size(), ErrorCode::kParse, "field file is truncated");
  }
  void Take(void* dst, std::size_t n) {
    Need(n);
    std::memcpy(dst, data_.data() + pos_, n);
    pos_ += n;
  }
  const std::string& data_;
  std::size_t pos_ = 0;
};

SpectralField FromBinary(const std::string& data) {
  Reader r(data);
  r.Bytes(4);
  const std::uint32_t version = r.U32();
  Require(version == kVersion, ErrorCode::kParse,
          "unsupported field file version " + std::to_string(version));
  const std::uint32_t nx = r.U32();
  const std::uint32_t ny = r.U32();
  const std::uint32_t tag_len = r.U32();
  Require(tag_len < 256, ErrorCode::kParse, "normalization tag too long");
  const std::string tag = r.Bytes(tag_len);
  Require(tag == kNormalizationTag, ErrorCode::kParse, "unknown normalization tag '" + tag + "'");
  const Grid grid(static_cast<int>(nx), static_cast<int>(ny));
  std::vector<Complex> coeffs(grid.size());
  for (auto& c : coeffs) {
    const double re = r.F64();
    const double im = r.F64();
    c = Complex(re, im);
  }
  Require(r.AtEnd(), ErrorCode::kParse, "trailing bytes after field data");
  return SpectralField(grid, std::move(coeffs));
}

SpectralField FromJson(const std::string& data) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(data);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("field JSON: ") + e.what());
  }
  try {
    Require(j.at("normalization").get<std::string>() == kNormalizationTag, ErrorCode::kParse,
            "unknown normalization tag");
    const Grid grid(j.at("nx").get<int>(), j.at("ny").get<int>());
    const auto& arr = j.at("coeffs");
    Require(arr.is_array() && arr.size() == grid.size(), ErrorCode::kParse,
            "field JSON: coeffs must hold nx*ny [re, im] pairs");
    std::vector<Complex> coeffs(grid.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      coeffs[i] = Complex(arr[i].at(0).get<double>(), arr[i].at(1).get<double>());
    }
    return SpectralField(grid, std::move(coeffs));
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("field JSON: ") + e.what());
  }
}

}  // namespace

void SaveField(const std::string& path, const SpectralField& field, FieldFormat format) {
  std::string out;
  const Grid& g = field.grid();
  if (format == FieldFormat::kBinary) {
    out.append(kMagic.data(), kMagic.size());
    PutU32(out, kVersion);
    PutU32(out, static_cast<std::uint32_t>(g.nx()));
    PutU32(out, static_cast<std::uint32_t>(g.ny()));
    const std::string tag = kNormalizationTag;
    PutU32(out, static_cast<std::uint32_t>(tag.size()));
    out += tag;
    for (const Complex& c : field.coeffs()) {
      PutF64(out, c.real());
      PutF64(out, c.imag());
    }
  } else {
    nlohmann::json j;
    j["nx"] = g.nx();
    j["ny"] = g.ny();
    j["normalization"] = kNormalizationTag;
    auto& arr = j["coeffs"] = nlohmann::json::array();
    for (const Complex& c : field.coeffs()) arr.push_back({c.real(), c.imag()});
    out = j.dump();
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  Require(static_cast<bool>(f), ErrorCode::kIo, "cannot open '" + path + "' for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  Require(static_cast<bool>(f), ErrorCode::kIo, "failed writing '" + path + "'");
}

SpectralField LoadField(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  Require(static_cast<bool>(f), ErrorCode::kIo, "cannot open '" + path + "'");
  const std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (data.size() >= 4 && std::equal(kMagic.begin(), kMagic.end(), data.begin())) {
    return FromBinary(data);
  }
  return FromJson(data);
}

}  // namespace zkd
