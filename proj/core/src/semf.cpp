#include "semtoken/semf.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "semtoken/errors.hpp"

namespace semtoken {
namespace {

constexpr std::array<char, 4> kMagic = {'S', 'E', 'M', 'F'};
constexpr std::size_t kHeaderBytes = 16;

void put_u32(char* out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
}

std::uint32_t get_u32(const char* in) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[i])) << (8 * i);
  return v;
}

}  // namespace

void write_semf(std::ostream& out, const FingerprintMatrix& matrix) {
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (matrix.rows() > kMax || matrix.dim() > kMax) {
    throw std::invalid_argument("matrix too large for SEMF");
  }
  char header[kHeaderBytes];
  std::memcpy(header, kMagic.data(), 4);
  put_u32(header + 4, kSemfVersion);
  put_u32(header + 8, static_cast<std::uint32_t>(matrix.rows()));
  put_u32(header + 12, static_cast<std::uint32_t>(matrix.dim()));
  out.write(header, kHeaderBytes);

  std::string body(matrix.data().size() * 4, '\0');
  for (std::size_t i = 0; i < matrix.data().size(); ++i) {
    put_u32(body.data() + 4 * i, std::bit_cast<std::uint32_t>(static_cast<float>(matrix.data()[i])));
  }
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw Error(ErrorKind::kIo, "failed to write SEMF data");
}

void write_semf(const std::filesystem::path& path, const FingerprintMatrix& matrix) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  write_semf(out, matrix);
}

FingerprintMatrix read_semf(std::istream& in) {
  char header[kHeaderBytes];
  if (!in.read(header, kHeaderBytes)) {
    throw Error(ErrorKind::kFormat, "SEMF header truncated");
  }
  if (std::memcmp(header, kMagic.data(), 4) != 0) {
    throw Error(ErrorKind::kFormat, "bad SEMF magic");
  }
  const std::uint32_t version = get_u32(header + 4);
  if (version != kSemfVersion) {
    throw Error(ErrorKind::kFormat, "unsupported SEMF version " + std::to_string(version));
  }
  const std::size_t rows = get_u32(header + 8);
  const std::size_t dim = get_u32(header + 12);

  // Read in bounded chunks so a lying header cannot force a huge allocation
  // before the truncation is noticed.
  const std::size_t count = rows * dim;
  constexpr std::size_t kChunk = 1 << 16;
  std::vector<double> data;
  std::string buf;
  for (std::size_t done = 0; done < count;) {
    const std::size_t take = std::min(kChunk, count - done);
    buf.resize(take * 4);
    if (!in.read(buf.data(), static_cast<std::streamsize>(buf.size()))) {
      throw Error(ErrorKind::kFormat, "SEMF body truncated: expected " + std::to_string(count) +
                                          " values");
    }
    for (std::size_t i = 0; i < take; ++i) {
      const float f = std::bit_cast<float>(get_u32(buf.data() + 4 * i));
      if (!std::isfinite(f)) {
        throw Error(ErrorKind::kData,
                    "non-finite value in SEMF row " + std::to_string((done + i) / dim));
      }
      data.push_back(f);
    }
    done += take;
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorKind::kFormat, "trailing bytes after SEMF body");
  }
  return FingerprintMatrix(rows, dim, std::move(data));
}

FingerprintMatrix load_embeddings(const std::filesystem::path& path,
                                  std::optional<std::size_t> expected_rows) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  FingerprintMatrix m = read_semf(in);
  if (expected_rows && m.rows() != *expected_rows) {
    throw Error(ErrorKind::kAlignment, path.string() + " has " + std::to_string(m.rows()) +
                                           " rows but " + std::to_string(*expected_rows) +
                                           " tokens were expected");
  }
  return m;
}

}  // namespace semtoken
