/** Topic coloring: a fixed 20-color categorical palette cycled by topic
 * index, identical in every tab. Tiny outlier topics render gray. */

export const PALETTE: readonly string[] = [
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
  "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5",
  "#c49c94", "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5",
];

export const OUTLIER_GRAY = "#bdbdbd";

/** Topics with at most this many terms count as outliers. */
export const OUTLIER_MAX_SIZE = 3;

export function topicColor(topicId: number, size?: number): string {
  if (size !== undefined && size <= OUTLIER_MAX_SIZE) {
    return OUTLIER_GRAY;
  }
  const index = ((topicId % PALETTE.length) + PALETTE.length) % PALETTE.length;
  return PALETTE[index]!;
}

/** Light backgrounds for word-cloud strata, cycled by stratum index. */
export const STRATUM_COLORS: readonly string[] = [
  "#e3f2fd", "#fff3e0", "#e8f5e9", "#fce4ec",
  "#ede7f6", "#f3e5ab", "#e0f7fa", "#f1f8e9",
];

export function stratumColor(stratumIndex: number): string {
  return STRATUM_COLORS[stratumIndex % STRATUM_COLORS.length]!;
}
