// lvc/pipeline/eval.h

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

#ifndef LVC_PIPELINE_EVAL_H_
#define LVC_PIPELINE_EVAL_H_

#include <string>
#include <vector>

#include "lvc/corpus/manifest.h"
#include "lvc/intel/siib.h"
#include "lvc/pipeline/config.h"

namespace lvc {

inline const char *kVersionString = "lvc 1.0.0";

// Convert every record of `sources` to the target speaker and write
// `<utt_id>__to__<target>.wav` files plus a run.meta provenance record.
struct ConversionJob {
  std::string checkpoint_path;
  std::string features_dir;  // conditioning dumps + embeddings.tsv
  std::string target_speaker;
  std::string out_dir;
};

void RunConversion(const Manifest &sources, const ConversionJob &job,
                   const Config &cfg);

// Enhance every wav in in_dir with the spectral-shaping + compression chain.
void RunEnhance(const std::string &in_dir, const std::string &out_dir,
                const Config &cfg);

struct SystemSpec {
  std::string name;
  std::string dir;
};

struct ExperimentReport {
  std::vector<EvalRow> rows;  // sorted by (system, snr)
  uint64_t config_hash = 0;
  std::string version;
};

// Score each system directory against the clean references under every SNR.
// Utterance ids come from file stems ("<id>__to__<target>.wav" maps back to
// <id>); ids missing from the clean set abort with the full list.  System
// directories carrying a run.meta with a different config hash are rejected
// unless force is set.
ExperimentReport RunEval(const std::string &clean_dir,
                         const std::vector<SystemSpec> &systems,
                         const std::vector<double> &snrs, uint64_t seed,
                         const Config &cfg, bool force);

// Pure TSV: system, snr_db, mean_oi, ci95, n.  Byte-stable across reruns.
void WriteReportTsv(const std::string &path, const ExperimentReport &report);
// Sidecar metadata (config hash, version, timestamp) as JSON.
void WriteReportMeta(const std::string &path, const ExperimentReport &report);

// "mean (ci)" table mirroring the report rows, for terminal output.
std::string FormatReportTable(const ExperimentReport &report);

// Provenance marker for output directories.
void WriteRunMeta(const std::string &dir, uint64_t config_hash,
                  const std::string &stage);
// Returns true and fills hash when the directory carries a run.meta.
bool ReadRunMetaHash(const std::string &dir, uint64_t *hash);

}  // namespace lvc

#endif  // LVC_PIPELINE_EVAL_H_
