/**
 * Grouped bar chart of the two headline series (revenue and net income from
 * operations), rendered as an SVG string. Bars for negative net income drop
 * below the axis, like the decision-table figures this mirrors.
 */

export interface ChartPoint {
  label: string;
  revenue: number;
  netIncome: number;
}

const WIDTH = 720;
const HEIGHT = 260;
const MARGIN = { top: 16, right: 12, bottom: 28, left: 12 };

export function revenueNetIncomeChart(points: ChartPoint[]): string {
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const peak = Math.max(1, ...points.map(p => Math.abs(p.revenue)),
                        ...points.map(p => Math.abs(p.netIncome)));
  const negative = points.some(p => p.netIncome < 0 || p.revenue < 0);
  const axisY = MARGIN.top + (negative ? plotH / 2 : plotH);
  const scale = (negative ? plotH / 2 : plotH) / peak;

  const groupW = points.length > 0 ? plotW / points.length : plotW;
  const barW = Math.max(2, groupW * 0.3);

  const bars: string[] = [];
  points.forEach((point, index) => {
    const x0 = MARGIN.left + index * groupW + groupW * 0.15;
    for (const [offset, value, cls] of [
      [0, point.revenue, "revenue"],
      [barW + 1, point.netIncome, "net-income"],
    ] as const) {
      const h = Math.abs(value) * scale;
      const y = value >= 0 ? axisY - h : axisY;
      bars.push(`<rect class="bar ${cls}" x="${(x0 + offset).toFixed(1)}" ` +
        `y="${y.toFixed(1)}" width="${barW.toFixed(1)}" height="${h.toFixed(1)}">` +
        `<title>${point.label}: ${value.toLocaleString("en-US")}</title></rect>`);
    }
    bars.push(`<text class="tick" x="${(x0 + barW).toFixed(1)}" ` +
      `y="${HEIGHT - 8}">${point.label.slice(0, 3)}</text>`);
  });

  return [
    `<svg class="chart" viewBox="0 0 ${WIDTH} ${HEIGHT}" role="img" ` +
    `aria-label="Revenue and net income by month">`,
    `<line class="axis" x1="${MARGIN.left}" y1="${axisY}" ` +
    `x2="${WIDTH - MARGIN.right}" y2="${axisY}"/>`,
    ...bars,
    `<g class="legend"><rect class="bar revenue" x="${MARGIN.left}" y="2" width="12" height="10"/>` +
    `<text x="${MARGIN.left + 16}" y="11">REVENUE</text>` +
    `<rect class="bar net-income" x="${MARGIN.left + 104}" y="2" width="12" height="10"/>` +
    `<text x="${MARGIN.left + 120}" y="11">NET INCOME FROM OPERATIONS</text></g>`,
    `</svg>`,
  ].join("");
}
