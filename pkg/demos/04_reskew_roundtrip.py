"""Key generation, encryption and decryption with the ReSkew-1-bin set.

Prints the serialized sizes next to the expected ones and a rough Prange
cost for the chosen parameters.
"""

import time

import numpy as np

from skewlab import reskew as rs

params = rs.get_params("reskew-1-bin")
rng = np.random.default_rng(4)

start = time.perf_counter()
pk, sk = rs.keygen(params, rng)
msg = rs.sample_message(params, rng)
ct = rs.encrypt(pk, msg)
back = rs.decrypt(sk, ct)
print(f"round trip ok: {np.array_equal(back, msg)} in {time.perf_counter() - start:.1f}s")

blobs = [rs.serialize(x) for x in (pk, sk, ct)]
print("payload bytes (pk, sk, ct):", tuple(rs.payload_size(b) for b in blobs), "expected", rs.sizes(params))
print("same key after a file round trip:", np.array_equal(rs.deserialize(blobs[0], rs.KIND_PK).T, pk.T))
print(f"Prange log2 work: {rs.prange_log2(params.n, params.k, params.t):.2f}")
