// Trichromatic sentiment scheme: red-orange for negative, dark blue for
// positive, orange for neutral.

import type { SentimentMix } from "./types.js";

export const SENTIMENT_COLORS = {
  negative: "#d9480f",
  positive: "#1c3f94",
  neutral: "#f59f00",
} as const;

export type Sentiment = keyof typeof SENTIMENT_COLORS;

export function dominantSentiment(mix: SentimentMix): Sentiment {
  if (mix.n_neg > mix.n_pos && mix.n_neg > mix.n_neu) return "negative";
  if (mix.n_pos > mix.n_neg && mix.n_pos > mix.n_neu) return "positive";
  return "neutral";
}

export function binColor(mix: SentimentMix): string {
  return SENTIMENT_COLORS[dominantSentiment(mix)];
}
