// Copyright 2026 The csi-ibbs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "csi/ibbs.hpp"
#include "csi/ibid.hpp"
#include "csi/transcript.hpp"
#include "csi/transport.hpp"

namespace csi {

// Blind signing flow per attempt: signer RHO_S1 -> user RHO_U -> signer
// RHO_S2. The signer opens with one UPK frame. After RHO_S2 the user either
// closes the stream (done) or sends ERROR(rejected) to request a fresh
// attempt. Failures are reported to the peer as ERROR frames.

struct SignerReport {
  std::uint32_t sessions = 0;  // S1 sessions opened
  bool completed = false;      // user closed cleanly after an RHO_S2
};

/// At most `max_sessions` attempts (0 selects params.retry_limit).
SignerReport run_blind_signer(Transport& t, const IbbsParams& params, const UserSecretKey& usk,
                              const UserPublicKey& upk, std::span<const std::uint8_t> id, Rng& rng,
                              TranscriptLog* log = nullptr, std::uint32_t max_sessions = 0);

struct UserReport {
  std::optional<Signature> signature;    // empty: every attempt ended in reject
  std::uint32_t attempts = 0;
  std::vector<IndexRef> last_mismatches;  // indices that failed in the last attempt
  Bytes id;
  UserPublicKey upk;
};

/// `expected_id` empty accepts whatever identity the signer announces;
/// `expected_upk` pins the public key when given.
UserReport run_blind_user(Transport& t, const IbbsParams& params, std::span<const std::uint8_t> expected_id,
                          const std::optional<UserPublicKey>& expected_upk, std::span<const std::uint8_t> m,
                          Rng& rng, TranscriptLog* log = nullptr, std::uint32_t limit = 0);

// Identification flow: prover ID_COMMIT -> verifier ID_CHALLENGE -> prover
// ID_RESPONSE.

void run_ibid_prover(Transport& t, const IbidParams& params, const IbidUserKey& key, Rng& rng,
                     TranscriptLog* log = nullptr);
bool run_ibid_verifier(Transport& t, const IbidParams& params, std::span<const std::uint8_t> id, Rng& rng,
                       TranscriptLog* log = nullptr);

}  // namespace csi
