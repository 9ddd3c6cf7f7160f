// lvc/vc/checkpoint.cc

// Copyright 2026  The lvc authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "lvc/vc/checkpoint.h"

#include <cstring>
#include <fstream>

#include "lvc/common.h"

namespace lvc {

namespace {

constexpr char kMagic[8] = {'L', 'V', 'C', 'C', 'K', 'P', 'T', '1'};
constexpr uint32_t kVersion = 1;

template <typename T>
void Put(std::ofstream &out, const T &v) {
  out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T>
T Get(std::ifstream &in, const std::string &path) {
  T v{};
  in.read(reinterpret_cast<char *>(&v), sizeof(T));
  if (!in) throw DataError("truncated checkpoint: " + path);
  return v;
}

void PutString(std::ofstream &out, const std::string &s) {
  Put<uint32_t>(out, static_cast<uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string GetString(std::ifstream &in, const std::string &path) {
  const auto len = Get<uint32_t>(in, path);
  if (len > (1u << 20)) throw DataError("unreasonable string length in " + path);
  std::string s(len, '\0');
  in.read(s.data(), len);
  if (!in) throw DataError("truncated checkpoint: " + path);
  return s;
}

CheckpointMeta ReadMeta(std::ifstream &in, const std::string &path) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0)
    throw DataError("bad checkpoint magic: " + path);
  const auto version = Get<uint32_t>(in, path);
  if (version != kVersion)
    throw DataError("unsupported checkpoint version in " + path);
  CheckpointMeta meta;
  meta.kind = Get<uint8_t>(in, path);
  meta.config_hash = Get<uint64_t>(in, path);
  meta.step = Get<uint64_t>(in, path);
  meta.conditioning = GetString(in, path);
  meta.style_loss = Get<uint8_t>(in, path) != 0;
  const auto vocab_n = Get<uint32_t>(in, path);
  if (vocab_n > (1u << 20)) throw DataError("unreasonable vocab size in " + path);
  meta.vocab.resize(vocab_n);
  for (auto &s : meta.vocab) s = GetString(in, path);
  return meta;
}

}  // namespace

void SaveCheckpoint(const std::string &path, const CheckpointMeta &meta,
                    const nn::ParamStore &params) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write checkpoint: " + path);
  out.write(kMagic, 8);
  Put<uint32_t>(out, kVersion);
  Put<uint8_t>(out, meta.kind);
  Put<uint64_t>(out, meta.config_hash);
  Put<uint64_t>(out, meta.step);
  PutString(out, meta.conditioning);
  Put<uint8_t>(out, meta.style_loss ? 1 : 0);
  Put<uint32_t>(out, static_cast<uint32_t>(meta.vocab.size()));
  for (const auto &s : meta.vocab) PutString(out, s);

  const auto all = params.All();
  Put<uint32_t>(out, static_cast<uint32_t>(all.size()));
  for (const nn::Param *p : all) {
    PutString(out, p->name);
    Put<uint32_t>(out, static_cast<uint32_t>(p->value.rows));
    Put<uint32_t>(out, static_cast<uint32_t>(p->value.cols));
    for (double v : p->value.v) Put<float>(out, static_cast<float>(v));
  }
}

CheckpointMeta LoadCheckpoint(const std::string &path, nn::ParamStore *params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path);
  CheckpointMeta meta = ReadMeta(in, path);

  const auto count = Get<uint32_t>(in, path);
  for (uint32_t i = 0; i < count; i++) {
    const std::string name = GetString(in, path);
    const auto rows = Get<uint32_t>(in, path);
    const auto cols = Get<uint32_t>(in, path);
    if (rows == 0 || cols == 0 || (uint64_t)rows * cols > (1u << 28))
      throw DataError("unreasonable parameter shape in " + path);
    nn::Param &p = params->Has(name)
                       ? params->Get(name)
                       : params->Create(name, (int)rows, (int)cols);
    if (p.value.rows != (int)rows || p.value.cols != (int)cols)
      throw DataError("checkpoint shape mismatch for " + name + " in " + path);
    for (size_t j = 0; j < p.value.Size(); j++)
      p.value.v[j] = static_cast<double>(Get<float>(in, path));
  }
  return meta;
}

CheckpointMeta PeekCheckpoint(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open checkpoint: " + path);
  return ReadMeta(in, path);
}

}  // namespace lvc
