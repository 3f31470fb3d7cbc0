import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";
import { parseTrajectoryCsv } from "./csv.js";
import { renderSeries } from "./series.js";
import { FigureSpec, PlotError, fileStem, validateSpec, writeOutput } from "./types.js";

const USAGE = "usage: plot_series --column <name> <trajectory.csv...> <out.svg>";

export function main(argv: string[]): number {
    try {
        let values: { column?: string };
        let positionals: string[];
        try {
            ({ values, positionals } = parseArgs({
                args: argv,
                options: { column: { type: "string", short: "c" } },
                allowPositionals: true,
            }));
        } catch (err) {
            throw new PlotError(`${(err as Error).message}\n${USAGE}`);
        }
        if (values.column === undefined || positionals.length < 2) {
            throw new PlotError(USAGE);
        }
        const inputs = positionals.slice(0, -1);
        const out = positionals[positionals.length - 1];
        const spec: FigureSpec = { kind: "series", inputs, labels: inputs.map(fileStem), out };
        validateSpec(spec);
        const trajs = spec.inputs.map(parseTrajectoryCsv);
        writeOutput(spec.out, renderSeries(trajs, values.column));
        console.log(`wrote ${spec.out}`);
        return 0;
    } catch (err) {
        if (err instanceof PlotError) {
            console.error(`error: ${err.message}`);
            return 1;
        }
        throw err;
    }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
    process.exit(main(process.argv.slice(2)));
}
