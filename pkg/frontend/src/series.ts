import { Trajectory, column } from "./csv.js";
import { PlotError } from "./types.js";
import { SvgCanvas, linearTicks, seriesColor, tickLabels } from "./svg.js";

const WIDTH = 720;
const HEIGHT = 440;
const LEFT = 110;
const RIGHT = 24;
const TOP = 40;
const BOTTOM = 52;

interface Extent {
    lo: number;
    hi: number;
}

function extent(values: number[][]): Extent {
    let lo = Infinity;
    let hi = -Infinity;
    for (const series of values) {
        for (const v of series) {
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
    }
    if (hi === lo) {
        // constant column (e.g. an exactly preserved invariant): pad so
        // the flat line sits mid-axis instead of collapsing the scale
        const pad = Math.max(Math.abs(lo) * 1e-6, 1e-12);
        return { lo: lo - pad, hi: hi + pad };
    }
    const pad = (hi - lo) * 0.04;
    return { lo: lo - pad, hi: hi + pad };
}

// Line plot of one named column against t for every input trajectory.
export function renderSeries(trajs: Trajectory[], columnName: string): string {
    if (trajs.length === 0) {
        throw new PlotError("no trajectories to draw");
    }
    const xs = trajs.map((traj) => column(traj, "t"));
    const ys = trajs.map((traj) => column(traj, columnName));

    const xExtent = extent(xs);
    const yExtent = extent(ys);
    const plotW = WIDTH - LEFT - RIGHT;
    const plotH = HEIGHT - TOP - BOTTOM;
    const toX = (v: number) => LEFT + ((v - xExtent.lo) / (xExtent.hi - xExtent.lo)) * plotW;
    const toY = (v: number) => TOP + plotH - ((v - yExtent.lo) / (yExtent.hi - yExtent.lo)) * plotH;

    const svg = new SvgCanvas(WIDTH, HEIGHT);
    svg.text(WIDTH / 2, 22, `${columnName} vs t`, 'font-size="14" text-anchor="middle" fill="#222"');

    const xTicks = linearTicks(xExtent.lo, xExtent.hi);
    const yTicks = linearTicks(yExtent.lo, yExtent.hi);
    const xLabels = tickLabels(xTicks);
    const yLabels = tickLabels(yTicks);
    xTicks.forEach((t, i) => {
        const x = toX(t);
        svg.line(x, TOP, x, TOP + plotH, 'stroke="#e4e7ea" stroke-width="0.7"');
        svg.text(x, TOP + plotH + 18, xLabels[i], 'font-size="10" text-anchor="middle" fill="#444"');
    });
    yTicks.forEach((t, i) => {
        const y = toY(t);
        svg.line(LEFT, y, LEFT + plotW, y, 'stroke="#e4e7ea" stroke-width="0.7"');
        svg.text(LEFT - 6, y + 3, yLabels[i], 'font-size="10" text-anchor="end" fill="#444"');
    });
    svg.line(LEFT, TOP, LEFT, TOP + plotH, 'stroke="#333" stroke-width="1"');
    svg.line(LEFT, TOP + plotH, LEFT + plotW, TOP + plotH, 'stroke="#333" stroke-width="1"');
    svg.text(LEFT + plotW / 2, HEIGHT - 14, "t", 'font-size="12" text-anchor="middle" fill="#222"');
    svg.text(16, TOP - 12, columnName, 'font-size="12" text-anchor="start" fill="#222"');

    trajs.forEach((traj, i) => {
        const points: Array<[number, number]> = xs[i].map((x, k) => [toX(x), toY(ys[i][k])]);
        svg.polyline(points, `stroke="${seriesColor(i)}" stroke-width="1.4"`);
    });

    // legend in the top-right corner of the plot area
    trajs.forEach((traj, i) => {
        const y = TOP + 14 + 16 * i;
        const x = LEFT + plotW - 150;
        svg.line(x, y - 4, x + 22, y - 4, `stroke="${seriesColor(i)}" stroke-width="2"`);
        svg.text(x + 28, y, traj.label, 'font-size="11" fill="#333"');
    });

    return svg.render();
}
