// Inline-SVG bar charts. Values are rendered exactly as the server
// reported them (six fractional digits, matching the CSV exports), so a
// chart label can be compared against an export byte for byte.

export function fmt6(value: number): string {
  return value.toFixed(6);
}

export interface Bar {
  label: string;
  value: number;
  /** Pre-formatted display text; defaults to fmt6(value). */
  text?: string;
}

export interface BarGroup {
  group: string;
  bars: Bar[];
}

const PALETTE = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948"];
const ROW_HEIGHT = 24;
const LABEL_WIDTH = 190;
const VALUE_WIDTH = 110;
const CHART_WIDTH = 640;

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Horizontal bar chart; bar lengths are proportional to value/max. */
export function barChart(title: string, bars: Bar[], colorOffset = 0): string {
  if (bars.length === 0) {
    return `<figure class="chart"><figcaption>${esc(title)}</figcaption><p class="empty">no data</p></figure>`;
  }
  const max = Math.max(...bars.map((b) => b.value), 0);
  const span = CHART_WIDTH - LABEL_WIDTH - VALUE_WIDTH;
  const height = bars.length * ROW_HEIGHT + 8;
  const rows = bars
    .map((bar, i) => {
      const width = max > 0 ? Math.max((bar.value / max) * span, bar.value > 0 ? 2 : 0) : 0;
      const y = i * ROW_HEIGHT + 4;
      const color = PALETTE[(i + colorOffset) % PALETTE.length];
      const text = bar.text ?? fmt6(bar.value);
      return (
        `<text x="${LABEL_WIDTH - 6}" y="${y + 14}" text-anchor="end" class="bar-label">${esc(bar.label)}</text>` +
        `<rect x="${LABEL_WIDTH}" y="${y}" width="${width.toFixed(2)}" height="${ROW_HEIGHT - 8}" fill="${color}" data-value="${text}"></rect>` +
        `<text x="${LABEL_WIDTH + width + 6}" y="${y + 14}" class="bar-value">${esc(text)}</text>`
      );
    })
    .join("");
  return (
    `<figure class="chart"><figcaption>${esc(title)}</figcaption>` +
    `<svg viewBox="0 0 ${CHART_WIDTH} ${height}" width="${CHART_WIDTH}" height="${height}" role="img">${rows}</svg>` +
    `</figure>`
  );
}

/** Grouped horizontal bars: one block per group, consistent colors per label. */
export function groupedBarChart(title: string, groups: BarGroup[]): string {
  if (groups.length === 0 || groups.every((g) => g.bars.length === 0)) {
    return `<figure class="chart"><figcaption>${esc(title)}</figcaption><p class="empty">no data</p></figure>`;
  }
  const labels = [...new Set(groups.flatMap((g) => g.bars.map((b) => b.label)))];
  const colorOf = new Map(labels.map((label, i) => [label, PALETTE[i % PALETTE.length]]));
  const max = Math.max(...groups.flatMap((g) => g.bars.map((b) => b.value)), 0);
  const span = CHART_WIDTH - LABEL_WIDTH - VALUE_WIDTH;
  let y = 4;
  const parts: string[] = [];
  for (const group of groups) {
    parts.push(
      `<text x="0" y="${y + 14}" class="group-label">${esc(group.group)}</text>`,
    );
    y += ROW_HEIGHT;
    for (const bar of group.bars) {
      const width = max > 0 ? Math.max((bar.value / max) * span, bar.value > 0 ? 2 : 0) : 0;
      const text = bar.text ?? fmt6(bar.value);
      parts.push(
        `<text x="${LABEL_WIDTH - 6}" y="${y + 14}" text-anchor="end" class="bar-label">${esc(bar.label)}</text>` +
          `<rect x="${LABEL_WIDTH}" y="${y}" width="${width.toFixed(2)}" height="${ROW_HEIGHT - 8}" fill="${colorOf.get(bar.label)}" data-value="${text}"></rect>` +
          `<text x="${LABEL_WIDTH + width + 6}" y="${y + 14}" class="bar-value">${esc(text)}</text>`,
      );
      y += ROW_HEIGHT;
    }
    y += 6;
  }
  return (
    `<figure class="chart"><figcaption>${esc(title)}</figcaption>` +
    `<svg viewBox="0 0 ${CHART_WIDTH} ${y}" width="${CHART_WIDTH}" height="${y}" role="img">${parts.join("")}</svg>` +
    `</figure>`
  );
}
