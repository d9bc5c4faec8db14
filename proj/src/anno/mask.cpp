// Copyright 2026 The Longtail Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "longtail/anno/mask.hpp"

#include <algorithm>
#include <numeric>

#include "longtail/common/error.hpp"

namespace longtail {

BinaryMask::BinaryMask(int h, int w) : height(h), width(w) {
  if (h < 0 || w < 0) throw ShapeError("negative mask extent");
  bits.assign(static_cast<std::size_t>(h) * static_cast<std::size_t>(w), 0);
}

std::int64_t BinaryMask::area() const {
  return std::count(bits.begin(), bits.end(), std::uint8_t{1});
}

std::int64_t RleMask::area() const {
  std::int64_t total = 0;
  for (std::size_t i = 1; i < counts.size(); i += 2) total += counts[i];
  return total;
}

RleMask rle_encode(const BinaryMask& mask) {
  RleMask rle{mask.height, mask.width, {}};
  std::uint8_t prev = 0;
  std::uint32_t run = 0;
  for (int x = 0; x < mask.width; ++x) {
    for (int y = 0; y < mask.height; ++y) {
      const std::uint8_t v = mask.at(y, x) ? 1 : 0;
      if (v != prev) {
        rle.counts.push_back(run);
        run = 0;
        prev = v;
      }
      ++run;
    }
  }
  rle.counts.push_back(run);
  return rle;
}

BinaryMask rle_decode(const RleMask& rle) {
  const std::uint64_t expected =
      static_cast<std::uint64_t>(rle.height) * static_cast<std::uint64_t>(rle.width);
  const std::uint64_t total =
      std::accumulate(rle.counts.begin(), rle.counts.end(), std::uint64_t{0});
  if (total != expected) {
    throw CodecError("RLE runs sum to " + std::to_string(total) +
                     ", expected " + std::to_string(expected));
  }
  BinaryMask mask(rle.height, rle.width);
  std::uint64_t pos = 0;  // column-major position
  const auto h = static_cast<std::uint64_t>(rle.height);
  for (std::size_t i = 0; i < rle.counts.size(); ++i) {
    const std::uint64_t end = pos + rle.counts[i];
    if (i % 2 == 1) {
      for (std::uint64_t p = pos; p < end; ++p) {
        mask.set(static_cast<int>(p % h), static_cast<int>(p / h), true);
      }
    }
    pos = end;
  }
  return mask;
}

std::string rle_counts_to_string(const std::vector<std::uint32_t>& counts) {
  std::string s;
  s.reserve(counts.size() * 2);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    long long x = counts[i];
    if (i > 2) x -= static_cast<long long>(counts[i - 2]);
    bool more = true;
    while (more) {
      char c = static_cast<char>(x & 0x1f);
      x >>= 5;
      more = (c & 0x10) ? x != -1 : x != 0;
      if (more) c |= 0x20;
      s.push_back(static_cast<char>(c + 48));
    }
  }
  return s;
}

std::vector<std::uint32_t> rle_counts_from_string(std::string_view s) {
  std::vector<long long> raw;
  std::size_t p = 0;
  while (p < s.size()) {
    long long x = 0;
    int k = 0;
    bool more = true;
    while (more) {
      if (p >= s.size()) throw CodecError("truncated RLE counts string");
      const int c = static_cast<unsigned char>(s[p]) - 48;
      if (c < 0 || c > 63) throw CodecError("invalid character in RLE counts");
      if (k >= 12) throw CodecError("RLE count overflow");
      x |= static_cast<long long>(c & 0x1f) << (5 * k);
      more = (c & 0x20) != 0;
      ++p;
      ++k;
      if (!more && (c & 0x10)) x |= -1LL << (5 * k);
    }
    if (raw.size() > 2) x += raw[raw.size() - 2];
    raw.push_back(x);
  }
  std::vector<std::uint32_t> counts;
  counts.reserve(raw.size());
  for (long long v : raw) {
    if (v < 0 || v > static_cast<long long>(UINT32_MAX)) {
      throw CodecError("RLE run length out of range");
    }
    counts.push_back(static_cast<std::uint32_t>(v));
  }
  return counts;
}

RleMask rle_from_string(std::string_view s, int height, int width) {
  RleMask rle{height, width, rle_counts_from_string(s)};
  const std::uint64_t total =
      std::accumulate(rle.counts.begin(), rle.counts.end(), std::uint64_t{0});
  if (total != static_cast<std::uint64_t>(height) * static_cast<std::uint64_t>(width)) {
    throw CodecError("RLE runs do not cover the mask extent");
  }
  return rle;
}

Box mask_bbox(const BinaryMask& mask) {
  int x0 = mask.width, y0 = mask.height, x1 = -1, y1 = -1;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (mask.at(y, x)) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
    }
  }
  if (x1 < 0) return {};
  return {static_cast<double>(x0), static_cast<double>(y0),
          static_cast<double>(x1 - x0 + 1), static_cast<double>(y1 - y0 + 1)};
}

Box rle_bbox(const RleMask& rle) {
  if (rle.height == 0) return {};
  const auto h = static_cast<std::uint64_t>(rle.height);
  std::uint64_t x0 = UINT64_MAX, y0 = UINT64_MAX, x1 = 0, y1 = 0;
  bool any = false;
  std::uint64_t pos = 0;
  for (std::size_t i = 0; i < rle.counts.size(); ++i) {
    const std::uint64_t len = rle.counts[i];
    if (i % 2 == 1 && len > 0) {
      const std::uint64_t first = pos;
      const std::uint64_t last = pos + len - 1;
      const std::uint64_t cx0 = first / h, cx1 = last / h;
      x0 = std::min(x0, cx0);
      x1 = std::max(x1, cx1);
      if (cx0 != cx1) {
        // The run wraps across a column boundary, so it touches rows 0..h-1.
        y0 = 0;
        y1 = h - 1;
      } else {
        y0 = std::min(y0, first % h);
        y1 = std::max(y1, last % h);
      }
      any = true;
    }
    pos += len;
  }
  if (!any) return {};
  return {static_cast<double>(x0), static_cast<double>(y0),
          static_cast<double>(x1 - x0 + 1), static_cast<double>(y1 - y0 + 1)};
}

std::int64_t rle_intersection_area(const RleMask& a, const RleMask& b) {
  if (a.height != b.height || a.width != b.width) {
    throw ShapeError("RLE extents differ");
  }
  std::size_t ia = 0, ib = 0;
  std::uint64_t ra = a.counts.empty() ? 0 : a.counts[0];
  std::uint64_t rb = b.counts.empty() ? 0 : b.counts[0];
  std::int64_t inter = 0;
  while (ia < a.counts.size() && ib < b.counts.size()) {
    const std::uint64_t step = std::min(ra, rb);
    if ((ia % 2 == 1) && (ib % 2 == 1)) inter += static_cast<std::int64_t>(step);
    ra -= step;
    rb -= step;
    while (ra == 0 && ++ia < a.counts.size()) ra = a.counts[ia];
    while (rb == 0 && ++ib < b.counts.size()) rb = b.counts[ib];
  }
  return inter;
}

BinaryMask hflip(const BinaryMask& mask) {
  BinaryMask out(mask.height, mask.width);
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      out.set(y, mask.width - 1 - x, mask.at(y, x));
    }
  }
  return out;
}

BinaryMask resize_nearest(const BinaryMask& mask, int height, int width) {
  BinaryMask out(height, width);
  if (mask.height == 0 || mask.width == 0) return out;
  std::vector<int> src_x(static_cast<std::size_t>(width));
  for (int x = 0; x < width; ++x) src_x[x] = nearest_source_index(x, mask.width, width);
  for (int y = 0; y < height; ++y) {
    const int sy = nearest_source_index(y, mask.height, height);
    for (int x = 0; x < width; ++x) out.set(y, x, mask.at(sy, src_x[x]));
  }
  return out;
}

}  // namespace longtail
