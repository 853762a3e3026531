# %% [markdown]
# # Payload sweep: DE against RRL
#
# Embeds payloads of 128 to 65536 bits with both schemes, checks every round
# trip and records SSIM, PSNR and median run times. RRL holds at most one
# byte per 8x8 block, so on a 512x512 host its 65536-bit request is capped.

# %%
import sys

from revmark.bench import DEFAULT_PAYLOADS, run_bench, write_csv
from revmark.synthetic import fingerprint_like

host = fingerprint_like(512, seed=1)
rows = run_bench(host, DEFAULT_PAYLOADS, seed=0x5EED, repeats=3)

print(f"{'payload':>8} {'scheme':>6} {'ssim':>11} {'psnr':>8} {'ms':>8}  capped")
for r in rows:
    print(f"{r.payload_bits:>8} {r.scheme:>6} {r.ssim:.8f} {r.psnr_db:8.2f} {r.embed_ms + r.extract_ms:8.2f}  {r.capped}")

# %%
out = sys.argv[1] if len(sys.argv) > 1 else "sweep.csv"
write_csv(rows, out)
print("wrote", out)
