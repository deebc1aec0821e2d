/**
 * Deterministic SVG figure builder: multi-panel line charts with axes,
 * tick labels, and legends. Pure string assembly from fixed arithmetic,
 * so one job always yields byte-identical output.
 */

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: string;
  width?: number;
  dash?: string;
}

export interface Panel {
  title: string;
  series: Series[];
  logY?: boolean;
  xLabel?: string;
}

const PANEL_W = 460;
const PANEL_H = 320;
const MARGIN = { left: 64, right: 16, top: 34, bottom: 42 };
const LOG_FLOOR = 1e-300;

export const PALETTE = ["#1f6fb2", "#d1495b", "#3a9d6c", "#8f5fbf", "#c88a26", "#4d4d4d"];

function fmt(value: number): string {
  // fixed-precision pixel coordinates keep files deterministic and small
  return value.toFixed(2);
}

function fmtTick(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1e4 || magnitude < 1e-3) return value.toExponential(1);
  return parseFloat(value.toPrecision(4)).toString();
}

function niceTicks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) {
    const pad = Math.abs(lo) > 0 ? Math.abs(lo) * 0.5 : 0.5;
    lo -= pad;
    hi += pad;
  }
  const rawStep = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const mult of [1, 2, 2.5, 5, 10]) {
    if (mag * mult >= rawStep) {
      step = mag * mult;
      break;
    }
  }
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let t = first; t <= hi + step * 1e-9; t += step) {
    ticks.push(Math.abs(t) < step * 1e-9 ? 0 : t);
  }
  return ticks;
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(lo); e <= Math.floor(hi) + 1e-9; e++) ticks.push(e);
  if (ticks.length === 0) ticks.push(lo, hi);
  return ticks;
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function renderPanel(panel: Panel, x0: number, y0: number): string {
  const innerW = PANEL_W - MARGIN.left - MARGIN.right;
  const innerH = PANEL_H - MARGIN.top - MARGIN.bottom;
  const plotX = x0 + MARGIN.left;
  const plotY = y0 + MARGIN.top;

  let xLo = Infinity;
  let xHi = -Infinity;
  let yLo = Infinity;
  let yHi = -Infinity;
  const transformed = panel.series.map((s) => {
    const pts: Array<[number, number]> = [];
    for (let i = 0; i < s.x.length; i++) {
      let yv = s.y[i];
      if (!Number.isFinite(s.x[i]) || !Number.isFinite(yv)) continue;
      if (panel.logY) {
        if (yv <= 0) continue; // log scale drops nonpositive samples
        yv = Math.log10(Math.max(yv, LOG_FLOOR));
      }
      pts.push([s.x[i], yv]);
      if (s.x[i] < xLo) xLo = s.x[i];
      if (s.x[i] > xHi) xHi = s.x[i];
      if (yv < yLo) yLo = yv;
      if (yv > yHi) yHi = yv;
    }
    return pts;
  });
  if (!Number.isFinite(xLo)) {
    xLo = 0;
    xHi = 1;
    yLo = 0;
    yHi = 1;
  }
  if (yHi === yLo) {
    yHi += 0.5;
    yLo -= 0.5;
  } else {
    const pad = 0.05 * (yHi - yLo);
    yLo -= pad;
    yHi += pad;
  }
  if (xHi === xLo) {
    xHi += 0.5;
    xLo -= 0.5;
  }

  const sx = (v: number) => plotX + ((v - xLo) / (xHi - xLo)) * innerW;
  const sy = (v: number) => plotY + innerH - ((v - yLo) / (yHi - yLo)) * innerH;

  const parts: string[] = [];
  parts.push(
    `<rect x="${fmt(plotX)}" y="${fmt(plotY)}" width="${fmt(innerW)}" height="${fmt(innerH)}" fill="#fcfcfc" stroke="#606060" stroke-width="1"/>`,
  );
  parts.push(
    `<text x="${fmt(x0 + PANEL_W / 2)}" y="${fmt(y0 + 20)}" text-anchor="middle" font-size="14" font-weight="bold">${escapeXml(panel.title)}</text>`,
  );

  const yTicks = panel.logY ? logTicks(yLo, yHi) : niceTicks(yLo, yHi, 5);
  for (const t of yTicks) {
    if (t < yLo - 1e-12 || t > yHi + 1e-12) continue;
    const py = sy(t);
    parts.push(
      `<line x1="${fmt(plotX)}" y1="${fmt(py)}" x2="${fmt(plotX + innerW)}" y2="${fmt(py)}" stroke="#dddddd" stroke-width="0.6"/>`,
    );
    const label = panel.logY ? `1e${fmtTick(t)}` : fmtTick(t);
    parts.push(
      `<text x="${fmt(plotX - 6)}" y="${fmt(py + 3.5)}" text-anchor="end" font-size="10">${escapeXml(label)}</text>`,
    );
  }
  for (const t of niceTicks(xLo, xHi, 6)) {
    if (t < xLo - 1e-12 || t > xHi + 1e-12) continue;
    const px = sx(t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(plotY + innerH)}" x2="${fmt(px)}" y2="${fmt(plotY + innerH + 4)}" stroke="#606060" stroke-width="1"/>`,
    );
    parts.push(
      `<text x="${fmt(px)}" y="${fmt(plotY + innerH + 16)}" text-anchor="middle" font-size="10">${escapeXml(fmtTick(t))}</text>`,
    );
  }
  if (panel.xLabel) {
    parts.push(
      `<text x="${fmt(plotX + innerW / 2)}" y="${fmt(y0 + PANEL_H - 8)}" text-anchor="middle" font-size="11">${escapeXml(panel.xLabel)}</text>`,
    );
  }

  panel.series.forEach((s, i) => {
    const pts = transformed[i];
    if (pts.length === 0) return;
    const path = pts.map(([px, py], k) => `${k === 0 ? "M" : "L"}${fmt(sx(px))} ${fmt(sy(py))}`).join("");
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    parts.push(
      `<path d="${path}" fill="none" stroke="${s.color}" stroke-width="${s.width ?? 1.6}"${dash}/>`,
    );
  });

  let legendY = plotY + 14;
  for (const s of panel.series) {
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    parts.push(
      `<line x1="${fmt(plotX + innerW - 108)}" y1="${fmt(legendY - 3.5)}" x2="${fmt(plotX + innerW - 86)}" y2="${fmt(legendY - 3.5)}" stroke="${s.color}" stroke-width="2"${dash}/>`,
    );
    parts.push(
      `<text x="${fmt(plotX + innerW - 80)}" y="${fmt(legendY)}" font-size="10">${escapeXml(s.label)}</text>`,
    );
    legendY += 14;
  }
  return parts.join("\n");
}

/** Assemble panels into a grid figure (two columns). */
export function renderFigure(panels: Panel[], title?: string): string {
  const cols = panels.length > 1 ? 2 : 1;
  const rowCount = Math.ceil(panels.length / cols);
  const titlePad = title ? 26 : 0;
  const width = cols * PANEL_W;
  const height = rowCount * PANEL_H + titlePad;
  const body: string[] = [];
  if (title) {
    body.push(
      `<text x="${fmt(width / 2)}" y="18" text-anchor="middle" font-size="15" font-weight="bold">${escapeXml(title)}</text>`,
    );
  }
  panels.forEach((panel, i) => {
    const px = (i % cols) * PANEL_W;
    const py = Math.floor(i / cols) * PANEL_H + titlePad;
    body.push(renderPanel(panel, px, py));
  });
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    `<rect width="${width}" height="${height}" fill="white"/>`,
    body.join("\n"),
    "</svg>",
    "",
  ].join("\n");
}
