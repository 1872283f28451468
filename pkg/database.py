"""
database.py
SQLite persistence for verification reports and named delta/gamma tables.
"""

import sqlite3
import json
import logging
import pandas as pd
from typing import List, Dict, Optional
from contextlib import contextmanager

from colour import DeltaGammaTable
from utils import calculate_pass_rate
from verifier import VerificationReport

logger = logging.getLogger(__name__)


class ReportStore:
    """
    Manages the SQLite database holding verification reports and saved tables.
    """

    def __init__(self, db_path: str = "partitions.db"):
        """Open (or create) the database and its tables."""
        self.db_path = db_path
        self.init_database()

    @contextmanager
    def get_connection(self):
        """Context manager for database connections."""
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        try:
            yield conn
            conn.commit()
        except Exception as e:
            conn.rollback()
            raise e
        finally:
            conn.close()

    def init_database(self):
        with self.get_connection() as conn:
            cursor = conn.cursor()

            cursor.execute("""
                CREATE TABLE IF NOT EXISTS reports (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    claim TEXT NOT NULL,
                    n INTEGER,
                    truncation_order INTEGER,
                    status TEXT NOT NULL,
                    checked_terms INTEGER NOT NULL,
                    wall_time REAL NOT NULL,
                    report_json TEXT NOT NULL,
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            """)

            cursor.execute("""
                CREATE TABLE IF NOT EXISTS delta_gamma_tables (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    name TEXT NOT NULL UNIQUE,
                    n INTEGER NOT NULL,
                    table_json TEXT NOT NULL,
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            """)

            cursor.execute("CREATE INDEX IF NOT EXISTS idx_reports_claim ON reports(claim)")

    # ===== REPORT OPERATIONS =====

    def save_report(self, report: VerificationReport) -> int:
        """
        Store a report.

        Args:
            report: Finished verification report

        Returns:
            int: Report ID
        """
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("""
                INSERT INTO reports
                (claim, n, truncation_order, status, checked_terms, wall_time, report_json)
                VALUES (?, ?, ?, ?, ?, ?, ?)
            """, (
                report.claim,
                report.parameters.get("n"),
                report.parameters.get("order"),
                report.status,
                report.checked_terms,
                report.wall_time,
                json.dumps(report.to_dict()),
            ))
            logger.info("saved %s report as #%d", report.claim, cursor.lastrowid)
            return cursor.lastrowid

    def load_report(self, report_id: int) -> Optional[VerificationReport]:
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("SELECT report_json FROM reports WHERE id = ?", (report_id,))
            row = cursor.fetchone()
            if not row:
                return None
            return VerificationReport.from_dict(json.loads(row["report_json"]))

    def get_all_reports(self, limit: Optional[int] = None) -> List[Dict]:
        """
        Summaries of stored reports, newest first.

        Args:
            limit: Keep only the most recent reports

        Returns:
            List[Dict]: id, claim, n, order, status, checked_terms, wall_time, created_at
        """
        query = """
            SELECT id, claim, n, truncation_order, status, checked_terms, wall_time, created_at
            FROM reports
            ORDER BY id DESC
        """
        params: tuple = ()
        if limit is not None:
            query += " LIMIT ?"
            params = (limit,)
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(query, params)
            return [self._summary(row) for row in cursor.fetchall()]

    def get_reports_by_claim(self, claim: str) -> List[Dict]:
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("""
                SELECT id, claim, n, truncation_order, status, checked_terms, wall_time, created_at
                FROM reports
                WHERE claim = ?
                ORDER BY id DESC
            """, (claim,))
            return [self._summary(row) for row in cursor.fetchall()]

    @staticmethod
    def _summary(row: sqlite3.Row) -> Dict:
        return {
            'id': row['id'],
            'claim': row['claim'],
            'n': row['n'],
            'order': row['truncation_order'],
            'status': row['status'],
            'checked_terms': row['checked_terms'],
            'wall_time': row['wall_time'],
            'created_at': row['created_at'],
        }

    def delete_report(self, report_id: int) -> bool:
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("DELETE FROM reports WHERE id = ?", (report_id,))
            return cursor.rowcount > 0

    def delete_all_reports(self, claim: Optional[str] = None) -> int:
        """
        Delete every report, or every report of one claim.

        Returns:
            int: Number of reports deleted
        """
        with self.get_connection() as conn:
            cursor = conn.cursor()
            if claim:
                cursor.execute("SELECT COUNT(*) FROM reports WHERE claim = ?", (claim,))
                count = cursor.fetchone()[0]
                cursor.execute("DELETE FROM reports WHERE claim = ?", (claim,))
            else:
                cursor.execute("SELECT COUNT(*) FROM reports")
                count = cursor.fetchone()[0]
                cursor.execute("DELETE FROM reports")
            return count

    # ===== TABLE OPERATIONS =====

    def save_table(self, table: DeltaGammaTable) -> int:
        """Store a table under its name, replacing an older table of the same name."""
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("""
                INSERT INTO delta_gamma_tables (name, n, table_json)
                VALUES (?, ?, ?)
                ON CONFLICT(name) DO UPDATE SET n = excluded.n, table_json = excluded.table_json
            """, (table.name, table.n, json.dumps(table.to_dict())))
            cursor.execute("SELECT id FROM delta_gamma_tables WHERE name = ?", (table.name,))
            return cursor.fetchone()[0]

    def load_table(self, name: str) -> Optional[DeltaGammaTable]:
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("SELECT table_json FROM delta_gamma_tables WHERE name = ?", (name,))
            row = cursor.fetchone()
            if not row:
                return None
            return DeltaGammaTable.from_dict(json.loads(row["table_json"]), name=name)

    def get_all_tables(self) -> List[Dict]:
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("SELECT id, name, n, created_at FROM delta_gamma_tables ORDER BY name")
            return [dict(row) for row in cursor.fetchall()]

    def delete_table(self, name: str) -> bool:
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("DELETE FROM delta_gamma_tables WHERE name = ?", (name,))
            return cursor.rowcount > 0

    # ===== EXPORT OPERATIONS =====

    def export_reports_to_csv(self, claim: Optional[str] = None) -> pd.DataFrame:
        """
        Export report summaries to a DataFrame for CSV export.

        Args:
            claim: Optional claim ID to filter by

        Returns:
            pd.DataFrame: one row per report, first mismatch flattened into columns
        """
        with self.get_connection() as conn:
            if claim:
                df = pd.read_sql_query("SELECT * FROM reports WHERE claim = ? ORDER BY id DESC",
                                       conn, params=(claim,))
            else:
                df = pd.read_sql_query("SELECT * FROM reports ORDER BY id DESC", conn)

        mismatches = [json.loads(text).get("mismatch") or {} for text in df["report_json"]]
        df["mismatch_q"] = [m.get("q") for m in mismatches]
        df["mismatch_expected"] = [m.get("expected") for m in mismatches]
        df["mismatch_actual"] = [m.get("actual") for m in mismatches]
        return df.drop(columns=["report_json"]).rename(columns={"truncation_order": "order"})

    # ===== STATISTICS =====

    def get_report_statistics(self, claim: Optional[str] = None) -> Dict:
        """
        Aggregate counts over stored reports.

        Returns:
            Dict: total, passed, failed, pass rate, avg/max wall time and per-claim counts
        """
        where, params = ("WHERE claim = ?", (claim,)) if claim else ("", ())
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute(f"""
                SELECT
                    COUNT(*) as total_reports,
                    SUM(CASE WHEN status = 'pass' THEN 1 ELSE 0 END) as passed,
                    SUM(CASE WHEN status = 'fail' THEN 1 ELSE 0 END) as failed,
                    AVG(wall_time) as avg_wall_time,
                    MAX(wall_time) as max_wall_time,
                    COUNT(DISTINCT claim) as claims
                FROM reports
                {where}
            """, params)

            row = cursor.fetchone()
            cursor.execute(f"SELECT claim, COUNT(*) as reports FROM reports {where} GROUP BY claim ORDER BY claim", params)
            per_claim = {r["claim"]: r["reports"] for r in cursor.fetchall()}
            if row and row['total_reports'] > 0:
                return {
                    'total_reports': row['total_reports'],
                    'passed': row['passed'],
                    'failed': row['failed'],
                    'pass_rate': calculate_pass_rate(row['passed'], row['total_reports']),
                    'avg_wall_time': round(row['avg_wall_time'], 3),
                    'max_wall_time': round(row['max_wall_time'], 3),
                    'claims': row['claims'],
                    'per_claim': per_claim,
                }
            return {
                'total_reports': 0,
                'passed': 0,
                'failed': 0,
                'pass_rate': 0.0,
                'avg_wall_time': 0,
                'max_wall_time': 0,
                'claims': 0,
                'per_claim': {},
            }
