/** Fixed mode palette and a compact perceptual colormap for heatmaps. */

export const MODE_COLORS: Record<string, string> = {
  n_a: "#1f77b4",
  n_b: "#d62728",
  n_c: "#2ca02c",
};

export const MODE_LABELS: Record<string, string> = {
  n_a: "cavity a",
  n_b: "mirror b",
  n_c: "cavity c",
};

// sampled dark-blue -> green -> yellow ramp, interpolated linearly
const RAMP: Array<[number, number, number]> = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

export function heat(u: number): string {
  const v = Math.min(1, Math.max(0, u));
  const pos = v * (RAMP.length - 1);
  const i = Math.min(RAMP.length - 2, Math.floor(pos));
  const f = pos - i;
  const mix = (a: number, b: number) => Math.round(a + (b - a) * f);
  const [r, g, b] = [0, 1, 2].map((k) => mix(RAMP[i][k], RAMP[i + 1][k]));
  return `rgb(${r},${g},${b})`;
}
