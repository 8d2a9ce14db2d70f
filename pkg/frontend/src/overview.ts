// Topic corpus overview: hexbin plot wrapped by the dual selection rings,
// with the progress counter underneath. Mask overlays encode which parts
// of the landscape the session has already visited: overlay opacity is
// exactly the snapshot's mask_fraction.

import { binColor } from "./colors.js";
import type { BinView, OverviewSnapshot } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 480;
const CENTER = SIZE / 2;
const HEX_AREA_RADIUS = 150;
const INNER_RING = [158, 196] as const;
const OUTER_RING = [200, 238] as const;
const MASK_COLOR = "#f1f3f5";

export interface OverviewHandlers {
  onSelect(selection: string | null): void;
}

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

function hexPoints(cx: number, cy: number, radius: number): string {
  const pts: string[] = [];
  for (let i = 0; i < 6; i++) {
    const angle = (Math.PI / 3) * i - Math.PI / 6; // pointy-top
    pts.push(`${cx + radius * Math.sin(angle)},${cy - radius * Math.cos(angle)}`);
  }
  return pts.join(" ");
}

function binCenters(bins: BinView[]): Map<string, { x: number; y: number }> {
  // q/r may repeat across subdivision depths; spread repeats slightly so
  // every bin stays visible.
  const seen = new Map<string, number>();
  const raw = bins.map((b) => {
    const key = `${b.q}:${b.r}`;
    const bump = seen.get(key) ?? 0;
    seen.set(key, bump + 1);
    const x = Math.sqrt(3) * (b.q + b.r / 2) + bump * 0.35;
    const y = 1.5 * b.r + bump * 0.2;
    return { id: b.bin_id, x, y };
  });
  const xs = raw.map((p) => p.x);
  const ys = raw.map((p) => p.y);
  const spanX = Math.max(...xs) - Math.min(...xs) || 1;
  const spanY = Math.max(...ys) - Math.min(...ys) || 1;
  const scale = (2 * HEX_AREA_RADIUS * 0.92) / Math.max(spanX, spanY);
  const midX = (Math.max(...xs) + Math.min(...xs)) / 2;
  const midY = (Math.max(...ys) + Math.min(...ys)) / 2;
  const centers = new Map<string, { x: number; y: number }>();
  for (const p of raw) {
    centers.set(p.id, {
      x: CENTER + (p.x - midX) * scale,
      y: CENTER + (p.y - midY) * scale,
    });
  }
  return centers;
}

function polar(radius: number, angle: number): { x: number; y: number } {
  return { x: CENTER + radius * Math.cos(angle), y: CENTER + radius * Math.sin(angle) };
}

function sectorPath(r0: number, r1: number, a0: number, a1: number): string {
  const large = a1 - a0 > Math.PI ? 1 : 0;
  const p0 = polar(r1, a0);
  const p1 = polar(r1, a1);
  const p2 = polar(r0, a1);
  const p3 = polar(r0, a0);
  return [
    `M ${p0.x} ${p0.y}`,
    `A ${r1} ${r1} 0 ${large} 1 ${p1.x} ${p1.y}`,
    `L ${p2.x} ${p2.y}`,
    `A ${r0} ${r0} 0 ${large} 0 ${p3.x} ${p3.y}`,
    "Z",
  ].join(" ");
}

const TOPIC_PALETTE = ["#4c6ef5", "#82c91e", "#fab005", "#15aabf", "#be4bdb", "#fd7e14"];

export function renderOverview(
  snapshot: OverviewSnapshot,
  handlers: OverviewHandlers,
): HTMLElement {
  const root = document.createElement("section");
  root.className = "overview-panel";
  root.dataset.panel = "overview";

  const svg = svgEl("svg");
  svg.setAttribute("viewBox", `0 0 ${SIZE} ${SIZE}`);
  svg.setAttribute("class", "overview-svg");

  // hexbins with mask overlays
  const centers = binCenters(snapshot.bins);
  const hexRadius = Math.max(
    3,
    Math.min(11, (HEX_AREA_RADIUS * 1.65) / Math.max(4, Math.sqrt(snapshot.bins.length) * 2)),
  );
  for (const bin of snapshot.bins) {
    const c = centers.get(bin.bin_id)!;
    const hex = svgEl("polygon");
    hex.setAttribute("points", hexPoints(c.x, c.y, hexRadius));
    hex.setAttribute("fill", binColor(bin.sentiment_mix));
    hex.setAttribute("class", "hex-bin");
    hex.dataset.binId = bin.bin_id;
    hex.dataset.size = String(bin.size);
    svg.appendChild(hex);

    const mask = svgEl("polygon");
    mask.setAttribute("points", hexPoints(c.x, c.y, hexRadius));
    mask.setAttribute("fill", MASK_COLOR);
    mask.setAttribute("opacity", String(bin.mask_fraction));
    mask.setAttribute("class", "hex-mask");
    mask.dataset.maskFor = bin.bin_id;
    svg.appendChild(mask);
  }

  // outer ring: topics; inner ring: keywords grouped under their topic
  const outer = snapshot.rings.outer;
  const totalWeight = outer.reduce((acc, a) => acc + a.weight, 0) || 1;
  const minAngle = 0.06;
  const flexible = 2 * Math.PI - minAngle * outer.length;
  let angle = -Math.PI / 2;
  const topicSpans = new Map<string, { a0: number; a1: number; color: string }>();
  outer.forEach((arc, i) => {
    const span = minAngle + (arc.weight / totalWeight) * flexible;
    const color = TOPIC_PALETTE[i % TOPIC_PALETTE.length];
    topicSpans.set(arc.topic_id, { a0: angle, a1: angle + span, color });
    const path = svgEl("path");
    path.setAttribute("d", sectorPath(OUTER_RING[0], OUTER_RING[1], angle, angle + span - 0.01));
    path.setAttribute("fill", color);
    path.setAttribute("class", "ring-arc ring-outer");
    path.dataset.selection = `topic:${arc.topic_id}`;
    path.addEventListener("click", () => handlers.onSelect(`topic:${arc.topic_id}`));
    const title = svgEl("title");
    title.textContent = `${arc.label} (${arc.weight})`;
    path.appendChild(title);
    svg.appendChild(path);
    angle += span;
  });

  for (const [topicId, spanInfo] of topicSpans) {
    const kws = snapshot.rings.inner.filter((a) => a.topic_id === topicId);
    if (!kws.length) continue;
    const kwTotal = kws.reduce((acc, a) => acc + a.weight, 0) || 1;
    const spanWidth = spanInfo.a1 - spanInfo.a0;
    const kwMin = Math.min(0.02, spanWidth / (kws.length * 2));
    const kwFlex = spanWidth - kwMin * kws.length;
    let ka = spanInfo.a0;
    for (const kw of kws) {
      const span = kwMin + (kw.weight / kwTotal) * kwFlex;
      const path = svgEl("path");
      path.setAttribute("d", sectorPath(INNER_RING[0], INNER_RING[1], ka, ka + span - 0.005));
      path.setAttribute("fill", spanInfo.color);
      path.setAttribute("fill-opacity", "0.55");
      path.setAttribute("class", "ring-arc ring-inner");
      path.dataset.selection = `keyword:${kw.keyword}`;
      path.addEventListener("click", () => handlers.onSelect(`keyword:${kw.keyword}`));
      const title = svgEl("title");
      title.textContent = `${kw.keyword} (${kw.weight})`;
      path.appendChild(title);
      svg.appendChild(path);
      ka += span;
    }
  }

  root.appendChild(svg);

  // progress counter beneath the visualization
  const progress = document.createElement("div");
  progress.className = "progress-counter";
  progress.dataset.role = "progress";
  progress.textContent = `${snapshot.progress.viewed} / ${snapshot.progress.total} comments viewed`;
  root.appendChild(progress);

  if (snapshot.selection) {
    const clear = document.createElement("button");
    clear.className = "clear-selection";
    clear.textContent = `clear selection (${snapshot.selection})`;
    clear.addEventListener("click", () => handlers.onSelect(null));
    root.appendChild(clear);
  }

  return root;
}
